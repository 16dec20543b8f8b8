#include "bivcox/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bivcox {

void ObservationSet::validate() const {
    if (x.size() != y.size()) {
        throw std::invalid_argument("ObservationSet: x and y lengths differ");
    }
    if (covariate_dim > 0 && z.size() != covariate_dim * x.size()) {
        throw std::invalid_argument("ObservationSet: covariate block has wrong size");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("ObservationSet: lifetimes must be positive");
        }
    }
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw std::invalid_argument("kendall_tau: length mismatch");
    if (n < 2) throw std::invalid_argument("kendall_tau: need at least 2 pairs");
    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double prod = dx * dy;
            if (prod > 0.0) {
                ++concordant;
            } else if (prod < 0.0) {
                ++discordant;
            }
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

double kendall_tau(const SamplePairSet& pairs) {
    return kendall_tau(pairs.a, pairs.b);
}

PlugInFamily plugin_family_from_name(const std::string& name) {
    if (name == "clayton") return PlugInFamily::clayton;
    if (name == "gumbel") return PlugInFamily::gumbel;
    if (name == "amh") return PlugInFamily::amh;
    throw std::invalid_argument("unknown plug-in family: " + name);
}

double theta_from_tau(PlugInFamily family, double tau) {
    if (std::isnan(tau)) throw std::invalid_argument("theta_from_tau: NaN tau");
    if (tau < -1.0 || tau > 1.0) throw std::domain_error("theta_from_tau: tau outside [-1, 1]");
    switch (family) {
        case PlugInFamily::clayton:
            if (tau == 1.0) throw std::domain_error("theta_from_tau: clayton diverges at tau = 1");
            return 2.0 * tau / (1.0 - tau);
        case PlugInFamily::gumbel:
            if (tau == 1.0) throw std::domain_error("theta_from_tau: gumbel diverges at tau = 1");
            return 1.0 / (1.0 - tau);
        case PlugInFamily::amh:
            return 2.0 / (3.0 - tau);
    }
    return 0.0;
}

bool theta_in_domain(PlugInFamily family, double theta) {
    switch (family) {
        case PlugInFamily::clayton: return theta > 0.0;
        case PlugInFamily::gumbel: return theta >= 1.0;
        case PlugInFamily::amh: return theta >= 0.0 && theta < 1.0;
    }
    return false;
}

namespace {

std::vector<double> midranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}

} // namespace

double spearman_rho_empirical(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw std::invalid_argument("spearman_rho_empirical: length mismatch");
    if (n < 2) throw std::invalid_argument("spearman_rho_empirical: need at least 2 pairs");
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    const double mean = 0.5 * static_cast<double>(n + 1);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("spearman_rho_empirical: constant sample");
    }
    return sxy / std::sqrt(sxx * syy);
}

double spearman_rho_empirical(const SamplePairSet& pairs) {
    return spearman_rho_empirical(pairs.a, pairs.b);
}

namespace {

// solve (sym positive definite) A x = b in place, returning false on a
// nonpositive pivot
bool cholesky_solve(std::vector<double>& A, std::vector<double>& b, std::size_t d) {
    double scale = 0.0;
    for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::fabs(A[i * d + i]));
    const double floor = std::max(scale, 1.0) * 1e-12;
    for (std::size_t k = 0; k < d; ++k) {
        double pivot = A[k * d + k];
        for (std::size_t m = 0; m < k; ++m) pivot -= A[k * d + m] * A[k * d + m];
        if (!(pivot > floor)) return false;
        const double lkk = std::sqrt(pivot);
        A[k * d + k] = lkk;
        for (std::size_t i = k + 1; i < d; ++i) {
            double v = A[i * d + k];
            for (std::size_t m = 0; m < k; ++m) v -= A[i * d + m] * A[k * d + m];
            A[i * d + k] = v / lkk;
        }
    }
    for (std::size_t i = 0; i < d; ++i) { // L y = b
        double v = b[i];
        for (std::size_t m = 0; m < i; ++m) v -= A[i * d + m] * b[m];
        b[i] = v / A[i * d + i];
    }
    for (std::size_t ii = d; ii-- > 0;) { // L^T x = y
        double v = b[ii];
        for (std::size_t m = ii + 1; m < d; ++m) v -= A[m * d + ii] * b[m];
        b[ii] = v / A[ii * d + ii];
    }
    return true;
}

struct PlParts {
    double loglik = 0.0;
    std::vector<double> gradient;
    std::vector<double> information; // d x d
};

// one sweep over the risk sets, descending time, Breslow ties
PlParts partial_likelihood(std::span<const double> times,
                           std::span<const double> z, std::size_t d,
                           const std::vector<std::size_t>& order,
                           const std::vector<double>& beta) {
    const std::size_t n = times.size();
    PlParts out;
    out.gradient.assign(d, 0.0);
    out.information.assign(d * d, 0.0);

    double s0 = 0.0;
    std::vector<double> s1(d, 0.0);
    std::vector<double> s2(d * d, 0.0);
    std::vector<double> zbar(d);

    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        const double t = times[order[i]];
        while (j < n && times[order[j]] == t) ++j;
        for (std::size_t k = i; k < j; ++k) { // enter the risk set
            const std::size_t idx = order[k];
            double eta = 0.0;
            for (std::size_t m = 0; m < d; ++m) eta += beta[m] * z[idx * d + m];
            const double w = std::exp(eta);
            s0 += w;
            for (std::size_t m = 0; m < d; ++m) {
                s1[m] += w * z[idx * d + m];
                for (std::size_t l = 0; l <= m; ++l) {
                    s2[m * d + l] += w * z[idx * d + m] * z[idx * d + l];
                }
            }
        }
        const double log_s0 = std::log(s0);
        for (std::size_t m = 0; m < d; ++m) zbar[m] = s1[m] / s0;
        for (std::size_t k = i; k < j; ++k) { // each tied event, same risk set
            const std::size_t idx = order[k];
            double eta = 0.0;
            for (std::size_t m = 0; m < d; ++m) eta += beta[m] * z[idx * d + m];
            out.loglik += eta - log_s0;
            for (std::size_t m = 0; m < d; ++m) {
                out.gradient[m] += z[idx * d + m] - zbar[m];
                for (std::size_t l = 0; l <= m; ++l) {
                    out.information[m * d + l] += s2[m * d + l] / s0 - zbar[m] * zbar[l];
                }
            }
        }
        i = j;
    }
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t l = m + 1; l < d; ++l) {
            out.information[m * d + l] = out.information[l * d + m];
        }
    }
    return out;
}

} // namespace

FitResult cox_pl_fit(std::span<const double> times,
                     std::span<const double> covariates_row_major, std::size_t dim,
                     int max_iter, double tol) {
    const std::size_t n = times.size();
    if (n < 2) throw std::invalid_argument("cox_pl_fit: need at least 2 observations");
    if (dim == 0) throw std::invalid_argument("cox_pl_fit: need at least one covariate");
    if (covariates_row_major.size() != n * dim) {
        throw std::invalid_argument("cox_pl_fit: covariate block has wrong size");
    }
    for (double t : times) {
        if (!std::isfinite(t)) throw std::invalid_argument("cox_pl_fit: nonfinite time");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return times[i] > times[j]; });

    FitResult fit;
    fit.coefficients.assign(dim, 0.0);
    PlParts cur = partial_likelihood(times, covariates_row_major, dim, order,
                                     fit.coefficients);

    for (int iter = 1; iter <= max_iter; ++iter) {
        fit.iterations = iter;
        // factor the information first so a flat likelihood (no covariate
        // contrast) is reported even when the gradient starts at zero
        std::vector<double> lhs = cur.information;
        std::vector<double> step = cur.gradient;
        if (!cholesky_solve(lhs, step, dim)) {
            throw std::runtime_error(
                "cox_pl_fit: singular information matrix (no covariate contrast)");
        }
        double gnorm = 0.0;
        for (double gm : cur.gradient) gnorm += gm * gm;
        gnorm = std::sqrt(gnorm);
        if (gnorm < tol) {
            fit.converged = true;
            break;
        }
        // step halving on likelihood decrease; the slack absorbs rounding of
        // likelihood values far from zero
        const double slack = 1e-12 * (1.0 + std::fabs(cur.loglik));
        double scale = 1.0;
        bool improved = false;
        std::vector<double> trial(dim);
        for (int half = 0; half < 30; ++half) {
            for (std::size_t m = 0; m < dim; ++m) {
                trial[m] = fit.coefficients[m] + scale * step[m];
            }
            PlParts next = partial_likelihood(times, covariates_row_major, dim, order, trial);
            if (next.loglik >= cur.loglik - slack) {
                fit.coefficients = trial;
                cur = std::move(next);
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) break;
    }
    // convergence may land exactly on the last allowed iteration
    if (!fit.converged) {
        double gnorm = 0.0;
        for (double gm : cur.gradient) gnorm += gm * gm;
        fit.converged = std::sqrt(gnorm) < tol;
    }
    fit.log_likelihood = cur.loglik;
    return fit;
}

MreSupport make_mre_support(const Copula& truth, MreScheme scheme,
                            const MreOptions& options) {
    MreSupport s;
    if (scheme == MreScheme::grid_uniform) {
        const int m = options.grid_points;
        if (m < 2) throw std::invalid_argument("make_mre_support: grid_points < 2");
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= m; ++j) {
                s.u.push_back(static_cast<double>(i) / (m + 1));
                s.v.push_back(static_cast<double>(j) / (m + 1));
                s.w.push_back(1.0 / (static_cast<double>(m) * m));
            }
        }
    } else if (scheme == MreScheme::grid) {
        const int m = options.grid_points;
        if (m < 2) throw std::invalid_argument("make_mre_support: grid_points < 2");
        // midpoint nodes weighted by the exact copula mass of each cell; the
        // cell masses are the rectangle sums of the true cdf and add to one
        double wsum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double lo_u = static_cast<double>(i) / m;
            const double hi_u = static_cast<double>(i + 1) / m;
            for (int j = 0; j < m; ++j) {
                const double lo_v = static_cast<double>(j) / m;
                const double hi_v = static_cast<double>(j + 1) / m;
                s.u.push_back(0.5 * (lo_u + hi_u));
                s.v.push_back(0.5 * (lo_v + hi_v));
                const double w = truth.cdf(hi_u, hi_v) - truth.cdf(lo_u, hi_v) -
                                 truth.cdf(hi_u, lo_v) + truth.cdf(lo_u, lo_v);
                s.w.push_back(std::max(w, 0.0));
                wsum += s.w.back();
            }
        }
        for (double& w : s.w) w /= wsum;
    } else {
        if (options.mc_draws < 1) throw std::invalid_argument("make_mre_support: mc_draws < 1");
        Rng rng(options.mc_seed, 0);
        const SamplePairSet draws =
            sample_copula(truth, static_cast<std::size_t>(options.mc_draws), rng);
        s.u = draws.a;
        s.v = draws.b;
        s.w.assign(s.u.size(), 1.0 / static_cast<double>(s.u.size()));
    }
    s.truth_cdf.resize(s.u.size());
    for (std::size_t k = 0; k < s.u.size(); ++k) {
        s.truth_cdf[k] = truth.cdf(s.u[k], s.v[k]);
    }
    return s;
}

double mean_relative_error(const MreSupport& support, const Copula& estimate) {
    double total = 0.0;
    for (std::size_t k = 0; k < support.u.size(); ++k) {
        const double t = support.truth_cdf[k];
        const double e = estimate.cdf(support.u[k], support.v[k]);
        total += support.w[k] * std::fabs((t - e) / t);
    }
    return total;
}

double mean_relative_error(const Copula& truth, const Copula& estimate,
                           MreScheme scheme, const MreOptions& options) {
    return mean_relative_error(make_mre_support(truth, scheme, options), estimate);
}

} // namespace bivcox
