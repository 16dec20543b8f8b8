#include "bivcox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bivcox {

namespace {

constexpr double kSlack = 1e-10;          // slack on nonnegativity checks
constexpr double kEndpointTol = 1e-12;    // A(0), A(1)
constexpr double kConvexityTol = 1e-9;    // second divided differences

// track the worst (most negative) margin of a ">= 0" check
struct Worst {
    double value = 0.0; // worst signed margin seen (negative = violation)
    std::vector<double> where;
    std::string what;
    bool seen = false;

    void offer(double margin, std::initializer_list<double> coords, const char* label) {
        if (!seen || margin < value) {
            seen = true;
            value = margin;
            where.assign(coords);
            what = label;
        }
    }
};

VerificationReport finish(std::string property, const Worst& w, double tol, int resolution) {
    VerificationReport r;
    r.property = std::move(property);
    r.resolution = resolution;
    if (w.seen && w.value < -tol) {
        r.pass = false;
        r.worst_violation = -w.value;
        r.witness = w.where;
        r.detail = w.what;
    } else {
        r.pass = true;
        r.worst_violation = w.seen ? std::max(0.0, -w.value) : 0.0;
        r.detail = "no violation found at resolution " + std::to_string(resolution);
    }
    return r;
}

} // namespace

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> p(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        p[static_cast<std::size_t>(i)] =
            margin + (1.0 - 2.0 * margin) * static_cast<double>(i) /
                         static_cast<double>(resolution - 1);
    }
    return p;
}

void GridSpec::validate() const {
    if (resolution < 3) throw std::invalid_argument("GridSpec: resolution must be >= 3");
    if (!(margin > 0.0 && margin < 0.5)) {
        throw std::invalid_argument("GridSpec: margin must lie in (0, 0.5)");
    }
}

nlohmann::json VerificationReport::to_json() const {
    return {
        {"property", property},
        {"pass", pass},
        {"worst_violation", worst_violation},
        {"witness", witness},
        {"detail", detail},
        {"resolution", resolution},
    };
}

VerificationReport check_copula_axioms(const Copula& c, const GridSpec& grid) {
    const auto pts = grid.points();
    const auto n = pts.size();
    Worst w;

    for (double u : pts) {
        w.offer(-std::fabs(c.cdf(u, 1.0) - u), {u, 1.0}, "uniform margin C(u,1)=u");
        w.offer(-std::fabs(c.cdf(1.0, u) - u), {1.0, u}, "uniform margin C(1,v)=v");
        w.offer(-std::fabs(c.cdf(u, 0.0)), {u, 0.0}, "groundedness C(u,0)=0");
        w.offer(-std::fabs(c.cdf(0.0, u)), {0.0, u}, "groundedness C(0,v)=0");
    }

    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            values[i * n + j] = c.cdf(pts[i], pts[j]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double rect = values[(i + 1) * n + j + 1] - values[i * n + j + 1] -
                                values[(i + 1) * n + j] + values[i * n + j];
            w.offer(rect, {pts[i], pts[j], pts[i + 1], pts[j + 1]}, "rectangle inequality");
        }
    }
    return finish("copula-axioms", w, kSlack, grid.resolution);
}

VerificationReport check_tp2(const Copula& c, const GridSpec& grid) {
    const auto pts = grid.points();
    const auto n = pts.size();
    Worst w;

    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = c.cdf(pts[i], pts[j]);
            values[i * n + j] = x;
            w.offer(x, {pts[i], pts[j]}, "nonnegativity");
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double det = values[i * n + j] * values[(i + 1) * n + j + 1] -
                               values[i * n + j + 1] * values[(i + 1) * n + j];
            w.offer(det, {pts[i], pts[j], pts[i + 1], pts[j + 1]}, "2x2 determinant");
        }
    }
    return finish("tp2", w, kSlack, grid.resolution);
}

VerificationReport check_tp2_differential(const Copula& c, const GridSpec& grid,
                                          double step) {
    const auto pts = grid.points();
    Worst w;
    for (double u : pts) {
        for (double v : pts) {
            const double h = std::min({step, 0.45 * u, 0.45 * (1.0 - u), 0.45 * v,
                                       0.45 * (1.0 - v)});
            const double cc = c.cdf(u, v);
            const double du = (c.cdf(u + h, v) - c.cdf(u - h, v)) / (2.0 * h);
            const double dv = (c.cdf(u, v + h) - c.cdf(u, v - h)) / (2.0 * h);
            const double duv = (c.cdf(u + h, v + h) - c.cdf(u + h, v - h) -
                                c.cdf(u - h, v + h) + c.cdf(u - h, v - h)) /
                               (4.0 * h * h);
            w.offer(duv * cc - du * dv, {u, v}, "derivative criterion");
        }
    }
    // differences of differences: grant extra slack over the exact-arithmetic case
    return finish("tp2-differential", w, 1e-7, grid.resolution);
}

VerificationReport check_pqd(const Copula& c, const GridSpec& grid) {
    const auto pts = grid.points();
    Worst w;
    for (double u : pts) {
        for (double v : pts) {
            w.offer(c.cdf(u, v) - u * v, {u, v}, "C(u,v) >= uv");
        }
    }
    return finish("pqd", w, kSlack, grid.resolution);
}

VerificationReport check_pickands(const PickandsFunction& a, int resolution) {
    if (resolution < 3) throw std::invalid_argument("check_pickands: resolution < 3");
    const auto n = static_cast<std::size_t>(resolution);
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = a(static_cast<double>(i) * h);
    }

    Worst w;
    w.offer(kEndpointTol - std::fabs(vals.front() - 1.0), {0.0}, "A(0) = 1");
    w.offer(kEndpointTol - std::fabs(vals.back() - 1.0), {1.0}, "A(1) = 1");
    VerificationReport endpoints = finish("pickands", w, 0.0, resolution);

    Worst wb;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * h;
        wb.offer(1.0 - vals[i], {t}, "upper bound A <= 1");
        wb.offer(vals[i] - std::max(t, 1.0 - t), {t}, "lower bound A >= max(t,1-t)");
    }
    VerificationReport bounds = finish("pickands", wb, kSlack, resolution);

    Worst wc;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double dd = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (2.0 * h * h);
        wc.offer(dd, {t}, "convexity (second divided difference)");
    }
    VerificationReport convexity = finish("pickands", wc, kConvexityTol, resolution);

    // combine: report the worst failing sub-check, or a clean pass
    for (const auto* r : {&endpoints, &bounds, &convexity}) {
        if (!r->pass) return *r;
    }
    VerificationReport ok = endpoints;
    ok.worst_violation =
        std::max({endpoints.worst_violation, bounds.worst_violation, convexity.worst_violation});
    return ok;
}

VerificationReport check_min_id(const Copula& c, const std::vector<double>& gammas,
                                const GridSpec& grid) {
    if (gammas.empty()) throw std::invalid_argument("check_min_id: empty gamma list");
    for (double g : gammas) {
        if (!(g > 0.0)) throw std::domain_error("check_min_id: gammas must be positive");
    }
    const auto pts = grid.points();
    const auto n = pts.size();
    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            values[i * n + j] = c.cdf(pts[i], pts[j]);
        }
    }

    Worst w;
    std::vector<double> powed(n * n);
    for (double gamma : gammas) {
        for (std::size_t k = 0; k < n * n; ++k) {
            powed[k] = std::pow(values[k], gamma);
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const double rect = powed[(i + 1) * n + j + 1] - powed[i * n + j + 1] -
                                    powed[(i + 1) * n + j] + powed[i * n + j];
                w.offer(rect, {gamma, pts[i], pts[j], pts[i + 1], pts[j + 1]},
                        "rectangle inequality of C^gamma");
            }
        }
    }
    return finish("min-id", w, kSlack, grid.resolution);
}

VerificationReport check_generator(const ArchimedeanGenerator& g, int resolution) {
    if (resolution < 3) throw std::invalid_argument("check_generator: resolution < 3");
    const auto n = static_cast<std::size_t>(resolution);
    // sample (0, 1]; avoid t = 0 where strict generators diverge
    std::vector<double> t(n), vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = (static_cast<double>(i) + 1.0) / static_cast<double>(n);
        vals[i] = g.value(t[i]);
    }

    Worst w;
    w.offer(kEndpointTol - std::fabs(vals.back()), {1.0}, "phi(1) = 0");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        w.offer(vals[i] - vals[i + 1], {t[i]}, "strict decrease");
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dd = vals[i + 1] - 2.0 * vals[i] + vals[i - 1];
        // absolute second difference; phi can be huge near 0, so scale
        const double scale = std::max(1.0, std::fabs(vals[i]));
        w.offer(dd / scale + kConvexityTol, {t[i]}, "convexity");
    }
    return finish("generator", w, 0.0, resolution);
}

} // namespace bivcox
