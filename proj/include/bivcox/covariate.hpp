#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bivcox/copula.hpp"
#include "bivcox/generator.hpp"
#include "bivcox/pickands.hpp"
#include "bivcox/verify.hpp"

namespace bivcox {

// Pair of log-linear covariate links: Phi(z) = exp(alpha_coefs . z) scales the
// hazard of the first lifetime, Psi(z) = exp(beta_coefs . z) the conditional
// hazard of the second. A scalar covariate is a vector of length 1.
//
// Derived quantities, with K(z) = Psi(z)/Phi(z):
//   alpha(z) = min(K, 1), beta(z) = min(1/K, 1) = W(z); max(alpha, beta) = 1.
class CovariateLink {
public:
    CovariateLink(std::vector<double> alpha_coefs, std::vector<double> beta_coefs);

    double phi(std::span<const double> z) const;
    double psi(std::span<const double> z) const;
    double alpha(std::span<const double> z) const;
    double beta(std::span<const double> z) const;
    double ratio(std::span<const double> z) const;  // K(z)
    double weight(std::span<const double> z) const; // W(z)

    std::size_t dimension() const { return alpha_coefs_.size(); }
    const std::vector<double>& alpha_coefs() const { return alpha_coefs_; }
    const std::vector<double>& beta_coefs() const { return beta_coefs_; }

private:
    std::vector<double> alpha_coefs_;
    std::vector<double> beta_coefs_;

    void check_dim(std::span<const double> z) const;
};

// Weibull survival function exp(-(t/scale)^shape)
struct WeibullSurvival {
    double shape = 1.0;
    double scale = 1.0;

    double survival(double t) const;
    double inverse_survival(double p) const; // t with survival(t) = p
    double hazard(double t) const;
};

// Marginal under the model: baseline survival raised to the PH power
class SurvivalMarginal {
public:
    SurvivalMarginal(WeibullSurvival baseline, double ph_power);

    double survival(double t) const;
    double inverse_survival(double p) const;
    double hazard(double t) const;

    const WeibullSurvival& baseline() const { return baseline_; }
    double ph_power() const { return ph_power_; }

private:
    WeibullSurvival baseline_;
    double ph_power_;
};

// --- copula propagation -----------------------------------------------------
//
// With P = Phi(z), Q = Psi(z), the copula of the stressed joint survival is
//   P >= Q:  u^{(P-Q)/P} C0(u^{1/P}, v^{1/Q})^Q
//   P <  Q:  v^{(Q-P)/Q} C0(u^{1/P}, v^{1/Q})^P
// evaluated directly on the baseline cdf; equal links take the first branch
// (both coincide there).
Copula propagate_copula(const Copula& baseline, const CovariateLink& link,
                        std::span<const double> z);

struct PropagationOutcome {
    Copula copula;
    // engaged when the baseline is not known TP2 and min(Phi,Psi) < 1; a
    // failed report flags a result that is not 2-increasing
    std::optional<VerificationReport> validity;
};

// Holds a baseline copula and the covariate links acting on it.
class PropagatedModel {
public:
    PropagatedModel(Copula baseline, CovariateLink link);

    PropagationOutcome propagate(std::span<const double> z,
                                 const GridSpec& check_grid = {}) const;

    const Copula& baseline() const { return baseline_; }
    const CovariateLink& link() const { return link_; }

private:
    Copula baseline_;
    CovariateLink link_;
};

// phi_z(t) = phi_0(t^{1/min(Phi,Psi)})
ArchimedeanGenerator propagate_generator(const ArchimedeanGenerator& g0,
                                         const CovariateLink& link,
                                         std::span<const double> z);

// u^{1-alpha} v^{1-beta} phi_z^{-1}(phi_z(u^alpha) + phi_z(v^beta))
double propagate_archimedean(const ArchimedeanGenerator& g0, const CovariateLink& link,
                             std::span<const double> z, double u, double v);

// baseline Pi(u^{1-kappa}, v^{1-eta}) C_phi0(u^kappa, v^eta) maps to the same
// form with exponents alpha*kappa, beta*eta and generator phi_z
double propagate_extended_archimedean(const ArchimedeanGenerator& g0, double kappa,
                                      double eta, const CovariateLink& link,
                                      std::span<const double> z, double u, double v);

// structured copulas for the two stable classes
Copula propagate_archimedean_copula(const ArchimedeanGenerator& g0,
                                    const CovariateLink& link,
                                    std::span<const double> z,
                                    double kappa = 1.0, double eta = 1.0);

// B^z(s) = 1 - WK - sW(1-K) + W[(1-s)K + s] A(s / (K(1-s) + s))
PickandsFunction propagate_pickands(const PickandsFunction& a, const CovariateLink& link,
                                    std::span<const double> z);

// B^{z'} from B^z through the ratios alpha(z')/alpha(z), beta(z')/beta(z);
// independent of the baseline dependence function
PickandsFunction transition_pickands(const PickandsFunction& b_z,
                                     const CovariateLink& link,
                                     std::span<const double> z,
                                     std::span<const double> z_prime);

// three-parameter asymmetric logistic dependence function
inline PickandsFunction asymmetric_logistic_pickands(double alpha, double beta,
                                                     double theta) {
    return PickandsFunction::asymmetric_logistic(alpha, beta, theta);
}

// joint survival under z from a baseline copula and Weibull baseline margins:
//   P >= Q:  H0(x,y)^Q F0(x)^{P-Q}      with H0(x,y) = C0(F0(x), G0(y))
//   P <  Q:  H0(x,y)^P G0(y)^{Q-P}
double propagate_sdf(const Copula& baseline, const WeibullSurvival& margin_x,
                     const WeibullSurvival& margin_y, const CovariateLink& link,
                     std::span<const double> z, double x, double y);

} // namespace bivcox
