#include "bivcox/covariate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bivcox {

namespace {

double dot(const std::vector<double>& coefs, std::span<const double> z) {
    double s = 0.0;
    for (std::size_t i = 0; i < coefs.size(); ++i) s += coefs[i] * z[i];
    return s;
}

void check_links(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0) || std::isinf(p) || std::isinf(q)) {
        throw std::domain_error("covariate links must evaluate to finite positive values");
    }
}

} // namespace

CovariateLink::CovariateLink(std::vector<double> alpha_coefs,
                             std::vector<double> beta_coefs)
    : alpha_coefs_(std::move(alpha_coefs)), beta_coefs_(std::move(beta_coefs)) {
    if (alpha_coefs_.empty() || alpha_coefs_.size() != beta_coefs_.size()) {
        throw std::invalid_argument(
            "CovariateLink: coefficient vectors must be nonempty and of equal length");
    }
    for (double c : alpha_coefs_) {
        if (std::isnan(c)) throw std::invalid_argument("CovariateLink: NaN coefficient");
    }
    for (double c : beta_coefs_) {
        if (std::isnan(c)) throw std::invalid_argument("CovariateLink: NaN coefficient");
    }
}

void CovariateLink::check_dim(std::span<const double> z) const {
    if (z.size() != alpha_coefs_.size()) {
        throw std::invalid_argument("covariate vector length does not match link dimension");
    }
    for (double zi : z) {
        if (std::isnan(zi)) throw std::invalid_argument("covariate vector contains NaN");
    }
}

double CovariateLink::phi(std::span<const double> z) const {
    check_dim(z);
    return std::exp(dot(alpha_coefs_, z));
}

double CovariateLink::psi(std::span<const double> z) const {
    check_dim(z);
    return std::exp(dot(beta_coefs_, z));
}

double CovariateLink::ratio(std::span<const double> z) const {
    check_dim(z);
    // exp(difference) keeps K exact when the two exponents nearly cancel
    return std::exp(dot(beta_coefs_, z) - dot(alpha_coefs_, z));
}

double CovariateLink::alpha(std::span<const double> z) const {
    return std::min(ratio(z), 1.0);
}

double CovariateLink::beta(std::span<const double> z) const {
    return std::min(1.0 / ratio(z), 1.0);
}

double CovariateLink::weight(std::span<const double> z) const {
    return beta(z);
}

double WeibullSurvival::survival(double t) const {
    if (std::isnan(t)) throw std::invalid_argument("WeibullSurvival: NaN time");
    if (t < 0.0) throw std::domain_error("WeibullSurvival: negative time");
    return std::exp(-std::pow(t / scale, shape));
}

double WeibullSurvival::inverse_survival(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("WeibullSurvival: probability must lie in (0, 1]");
    }
    return scale * std::pow(-std::log(p), 1.0 / shape);
}

double WeibullSurvival::hazard(double t) const {
    if (!(t > 0.0)) throw std::domain_error("WeibullSurvival: hazard needs t > 0");
    return (shape / scale) * std::pow(t / scale, shape - 1.0);
}

SurvivalMarginal::SurvivalMarginal(WeibullSurvival baseline, double ph_power)
    : baseline_(baseline), ph_power_(ph_power) {
    if (!(ph_power > 0.0)) throw std::domain_error("SurvivalMarginal: ph_power must be > 0");
}

double SurvivalMarginal::survival(double t) const {
    return std::pow(baseline_.survival(t), ph_power_);
}

double SurvivalMarginal::inverse_survival(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("SurvivalMarginal: probability must lie in (0, 1]");
    }
    return baseline_.inverse_survival(std::pow(p, 1.0 / ph_power_));
}

double SurvivalMarginal::hazard(double t) const {
    return ph_power_ * baseline_.hazard(t);
}

Copula propagate_copula(const Copula& baseline, const CovariateLink& link,
                        std::span<const double> z) {
    const double p = link.phi(z);
    const double q = link.psi(z);
    check_links(p, q);
    const std::string label =
        "propagated[" + baseline.name() + "]";
    if (p >= q) {
        return Copula::custom(label, [baseline, p, q](double u, double v) {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            if (u >= 1.0) return std::min(v, 1.0);
            if (v >= 1.0) return u;
            const double inner = baseline.cdf(std::pow(u, 1.0 / p), std::pow(v, 1.0 / q));
            return std::pow(u, (p - q) / p) * std::pow(inner, q);
        });
    }
    return Copula::custom(label, [baseline, p, q](double u, double v) {
        if (u <= 0.0 || v <= 0.0) return 0.0;
        if (v >= 1.0) return std::min(u, 1.0);
        if (u >= 1.0) return v;
        const double inner = baseline.cdf(std::pow(u, 1.0 / p), std::pow(v, 1.0 / q));
        return std::pow(v, (q - p) / q) * std::pow(inner, p);
    });
}

PropagatedModel::PropagatedModel(Copula baseline, CovariateLink link)
    : baseline_(std::move(baseline)), link_(std::move(link)) {}

PropagationOutcome PropagatedModel::propagate(std::span<const double> z,
                                              const GridSpec& check_grid) const {
    const double p = link_.phi(z);
    const double q = link_.psi(z);
    check_links(p, q);
    PropagationOutcome out{propagate_copula(baseline_, link_, z), std::nullopt};
    const auto tp2 = baseline_.known_tp2();
    const bool exponent_safe = std::min(p, q) >= 1.0;
    if (!(tp2.has_value() && *tp2) && !exponent_safe) {
        // outside the guaranteed regime: verify 2-increasingness of the result
        out.validity = check_copula_axioms(out.copula, check_grid);
    }
    return out;
}

ArchimedeanGenerator propagate_generator(const ArchimedeanGenerator& g0,
                                         const CovariateLink& link,
                                         std::span<const double> z) {
    if (!g0.tp2_condition_holds()) {
        throw std::domain_error("propagate_generator: baseline generator lacks the TP2 condition");
    }
    const double p = link.phi(z);
    const double q = link.psi(z);
    check_links(p, q);
    return g0.powered(1.0 / std::min(p, q));
}

double propagate_archimedean(const ArchimedeanGenerator& g0, const CovariateLink& link,
                             std::span<const double> z, double u, double v) {
    return propagate_extended_archimedean(g0, 1.0, 1.0, link, z, u, v);
}

double propagate_extended_archimedean(const ArchimedeanGenerator& g0, double kappa,
                                      double eta, const CovariateLink& link,
                                      std::span<const double> z, double u, double v) {
    if (std::isnan(u) || std::isnan(v)) {
        throw std::invalid_argument("propagate_extended_archimedean: NaN input");
    }
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
        throw std::domain_error("propagate_extended_archimedean: arguments outside [0, 1]");
    }
    if (kappa < 0.0 || kappa > 1.0 || eta < 0.0 || eta > 1.0) {
        throw std::domain_error("propagate_extended_archimedean: kappa, eta must lie in [0, 1]");
    }
    const ArchimedeanGenerator gz = propagate_generator(g0, link, z);
    const double a = link.alpha(z) * kappa;
    const double b = link.beta(z) * eta;
    if (u == 0.0 || v == 0.0) return 0.0;
    const double inner =
        archimedean_cdf(gz, std::pow(u, a), std::pow(v, b));
    return std::pow(u, 1.0 - a) * std::pow(v, 1.0 - b) * inner;
}

Copula propagate_archimedean_copula(const ArchimedeanGenerator& g0,
                                    const CovariateLink& link,
                                    std::span<const double> z, double kappa,
                                    double eta) {
    const ArchimedeanGenerator gz = propagate_generator(g0, link, z);
    return Copula::extended_archimedean(gz, link.alpha(z) * kappa, link.beta(z) * eta);
}

PickandsFunction propagate_pickands(const PickandsFunction& a, const CovariateLink& link,
                                    std::span<const double> z) {
    const double p = link.phi(z);
    const double q = link.psi(z);
    check_links(p, q);
    const double K = link.ratio(z);
    const double W = link.weight(z);
    if (K == 1.0) return a;
    return PickandsFunction::derived(
        "propagated[" + a.label() + "]", [a, K, W](double s) {
            const double denom = K * (1.0 - s) + s;
            return 1.0 - W * K - s * W * (1.0 - K) + W * denom * a(s / denom);
        });
}

PickandsFunction transition_pickands(const PickandsFunction& b_z,
                                     const CovariateLink& link,
                                     std::span<const double> z,
                                     std::span<const double> z_prime) {
    const double ra = link.alpha(z_prime) / link.alpha(z);
    const double rb = link.beta(z_prime) / link.beta(z);
    if (ra == 1.0 && rb == 1.0) return b_z;
    return PickandsFunction::derived(
        "transition[" + b_z.label() + "]", [b_z, ra, rb](double s) {
            const double denom = (1.0 - s) * ra + s * rb;
            return 1.0 - ra + (ra - rb) * s + denom * b_z(s * rb / denom);
        });
}

double propagate_sdf(const Copula& baseline, const WeibullSurvival& margin_x,
                     const WeibullSurvival& margin_y, const CovariateLink& link,
                     std::span<const double> z, double x, double y) {
    if (std::isnan(x) || std::isnan(y)) {
        throw std::invalid_argument("propagate_sdf: NaN time");
    }
    if (x < 0.0 || y < 0.0) throw std::invalid_argument("propagate_sdf: negative time");
    const double p = link.phi(z);
    const double q = link.psi(z);
    check_links(p, q);
    const double f0 = margin_x.survival(x);
    const double g0 = margin_y.survival(y);
    const double h0 = baseline.cdf(f0, g0);
    if (p >= q) {
        return std::pow(h0, q) * std::pow(f0, p - q);
    }
    return std::pow(h0, p) * std::pow(g0, q - p);
}

} // namespace bivcox
