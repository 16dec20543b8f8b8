#include "bivcox/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace bivcox {

namespace {

constexpr double kBisectTol = 1e-12;
constexpr int kBisectMaxIter = 200;
constexpr double kUnitClamp = 1e-12;

double clamp_open(double u) {
    if (u < kUnitClamp) return kUnitClamp;
    if (u > 1.0 - kUnitClamp) return 1.0 - kUnitClamp;
    return u;
}

double numeric_partial_u(const Copula& c, double u, double v) {
    const double h = std::min({1e-6, 0.45 * u, 0.45 * (1.0 - u)});
    return (c.cdf(u + h, v) - c.cdf(u - h, v)) / (2.0 * h);
}

// dA/ds by central differences; one-sided at the ends
double pickands_slope(const PickandsFunction& a, double s) {
    const double h = 1e-7;
    const double lo = std::max(0.0, s - h);
    const double hi = std::min(1.0, s + h);
    return (a(hi) - a(lo)) / (hi - lo);
}

double conditional_cdf_generator(const ArchimedeanGenerator& g, double u, double v) {
    const double c = archimedean_cdf(g, u, v);
    return g.derivative(u) / g.derivative(c);
}

// solve F(v) = p for monotone F on (0,1)
template <typename F>
double bisect_conditional(F&& f, double p, const char* what) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < kBisectMaxIter && hi - lo > kBisectTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = f(mid);
        if (std::isnan(val)) {
            throw std::runtime_error(std::string(what) +
                                     ": conditional cdf evaluated to NaN during inversion");
        }
        if (val < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double conditional_cdf(const Copula& c, double u, double v) {
    if (std::isnan(u) || std::isnan(v)) {
        throw std::invalid_argument("conditional_cdf: NaN input");
    }
    if (!(u > 0.0 && u < 1.0) || v < 0.0 || v > 1.0) {
        throw std::domain_error("conditional_cdf: u must be interior, v in [0, 1]");
    }
    if (v == 0.0) return 0.0;
    if (v == 1.0) return 1.0;
    switch (c.kind()) {
        case Copula::Kind::product:
            return v;
        case Copula::Kind::clayton:
            return conditional_cdf_generator(ArchimedeanGenerator::clayton(c.theta()), u, v);
        case Copula::Kind::gumbel:
            return conditional_cdf_generator(ArchimedeanGenerator::gumbel(c.theta()), u, v);
        case Copula::Kind::amh:
            return conditional_cdf_generator(ArchimedeanGenerator::amh(c.theta()), u, v);
        case Copula::Kind::archimedean:
            return conditional_cdf_generator(*c.generator(), u, v);
        case Copula::Kind::extreme_value: {
            const PickandsFunction& a = *c.pickands();
            const double luv = std::log(u) + std::log(v);
            const double t = std::log(v) / luv;
            return c.cdf(u, v) / u * (a(t) - t * pickands_slope(a, t));
        }
        default:
            return numeric_partial_u(c, u, v);
    }
}

SamplePairSet sample_copula(const Copula& c, std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_copula: n must be >= 1");
    if (c.kind() == Copula::Kind::product) {
        SamplePairSet out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform_open();
            const double v = rng.uniform_open();
            out.append(u, v);
        }
        return out;
    }
    if (c.kind() == Copula::Kind::extended_archimedean) {
        return sample_khoudraji(Copula::product(), Copula::archimedean(*c.generator()),
                                c.kappa(), c.eta(), n, rng);
    }
    SamplePairSet out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = clamp_open(rng.uniform_open());
        const double p = rng.uniform_open();
        const double v =
            bisect_conditional([&](double x) { return conditional_cdf(c, u, x); }, p,
                               c.name().c_str());
        out.append(u, v);
    }
    return out;
}

SamplePairSet sample_archimedean(const ArchimedeanGenerator& g, std::size_t n, Rng& rng) {
    return sample_copula(Copula::archimedean(g), n, rng);
}

double sample_positive_stable(double index, Rng& rng) {
    if (std::isnan(index)) throw std::invalid_argument("sample_positive_stable: NaN index");
    if (!(index > 0.0 && index <= 1.0)) {
        throw std::domain_error("sample_positive_stable: index must lie in (0, 1]");
    }
    if (index == 1.0) return 1.0;
    const double a = index;
    const double g = M_PI * rng.uniform_open();
    const double e = rng.exponential();
    return std::sin(a * g) * std::pow(std::sin(g), -1.0 / a) *
           std::pow(std::sin((1.0 - a) * g) / e, (1.0 - a) / a);
}

SamplePairSet sample_gumbel_via_frailty(double theta, std::size_t n, Rng& rng) {
    if (!(theta >= 1.0)) {
        throw std::domain_error("sample_gumbel_via_frailty: theta must be >= 1");
    }
    SamplePairSet out;
    out.reserve(n);
    if (theta == 1.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform_open();
            const double v = rng.uniform_open();
            out.append(u, v);
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double w = sample_positive_stable(1.0 / theta, rng);
        const double e1 = rng.exponential();
        const double e2 = rng.exponential();
        out.append(std::exp(-std::pow(e1 / w, 1.0 / theta)),
                   std::exp(-std::pow(e2 / w, 1.0 / theta)));
    }
    return out;
}

SamplePairSet sample_khoudraji(const Copula& c1, const Copula& c2, double kappa,
                               double eta, std::size_t n, Rng& rng) {
    if (std::isnan(kappa) || std::isnan(eta)) {
        throw std::invalid_argument("sample_khoudraji: NaN exponent");
    }
    if (kappa < 0.0 || kappa > 1.0 || eta < 0.0 || eta > 1.0) {
        throw std::domain_error("sample_khoudraji: kappa, eta must lie in [0, 1]");
    }
    // boundary exponents: only one component contributes to that coordinate
    if (kappa == 1.0 && eta == 1.0) return sample_copula(c2, n, rng);
    if (kappa == 0.0 && eta == 0.0) return sample_copula(c1, n, rng);

    const SamplePairSet s1 = sample_copula(c1, n, rng);
    const SamplePairSet s2 = sample_copula(c2, n, rng);
    auto combine = [](double x1, double w1, double x2, double w2) {
        double r = 0.0;
        if (w1 > 0.0) r = std::max(r, w1 == 1.0 ? x1 : std::pow(x1, 1.0 / w1));
        if (w2 > 0.0) r = std::max(r, w2 == 1.0 ? x2 : std::pow(x2, 1.0 / w2));
        return r;
    };
    SamplePairSet out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.append(combine(s1.a[i], 1.0 - kappa, s2.a[i], kappa),
                   combine(s1.b[i], 1.0 - eta, s2.b[i], eta));
    }
    return out;
}

namespace {

// propagated copula in a sampleable form: structured when the baseline is
// archimedean at heart, generic conditional sampling otherwise
Copula sampleable_propagated(const Copula& baseline, const CovariateLink& link,
                             std::span<const double> z) {
    switch (baseline.kind()) {
        case Copula::Kind::clayton:
            return propagate_archimedean_copula(ArchimedeanGenerator::clayton(baseline.theta()),
                                                link, z);
        case Copula::Kind::gumbel:
            return propagate_archimedean_copula(ArchimedeanGenerator::gumbel(baseline.theta()),
                                                link, z);
        case Copula::Kind::amh:
            return propagate_archimedean_copula(ArchimedeanGenerator::amh(baseline.theta()),
                                                link, z);
        case Copula::Kind::archimedean:
            return propagate_archimedean_copula(*baseline.generator(), link, z);
        case Copula::Kind::extended_archimedean:
            return propagate_archimedean_copula(*baseline.generator(), link, z,
                                                baseline.kappa(), baseline.eta());
        case Copula::Kind::product:
            return Copula::product();
        default:
            return propagate_copula(baseline, link, z);
    }
}

} // namespace

SamplePairSet sample_model_m(const Copula& baseline, const WeibullSurvival& margin_x,
                             const WeibullSurvival& margin_y, const CovariateLink& link,
                             std::span<const double> z, std::size_t n, Rng& rng) {
    const SurvivalMarginal mx(margin_x, link.phi(z));
    const SurvivalMarginal my(margin_y, link.psi(z));
    const Copula cz = sampleable_propagated(baseline, link, z);

    SamplePairSet pairs = sample_copula(cz, n, rng);
    SamplePairSet out;
    out.lifetimes = true;
    out.covariate_dim = z.size();
    out.reserve(n);
    out.covariates.reserve(n * z.size());
    for (std::size_t i = 0; i < n; ++i) {
        out.append(mx.inverse_survival(pairs.a[i]), my.inverse_survival(pairs.b[i]));
        out.covariates.insert(out.covariates.end(), z.begin(), z.end());
    }
    return out;
}

} // namespace bivcox
