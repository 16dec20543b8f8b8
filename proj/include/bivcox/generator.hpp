#pragma once

#include <string>

namespace bivcox {

enum class ArchimedeanFamily { clayton, gumbel, amh };

const char* family_name(ArchimedeanFamily f);

// Generator phi of an archimedean copula, optionally composed with a power
// transform: phi(t) = phi0(t^m) with m > 0. The power form arises when a
// covariate acts on the baseline copula; it keeps the derived generator exact
// instead of forcing it back into one of the named families.
//
// Closed forms (exponent m = 1):
//   clayton  theta > 0      phi(t) = t^-theta - 1
//   gumbel   theta >= 1     phi(t) = (-log t)^theta
//   amh      theta in [0,1) phi(t) = log((1 - theta(1-t))/t)
class ArchimedeanGenerator {
public:
    ArchimedeanGenerator(ArchimedeanFamily family, double theta, double exponent = 1.0);

    static ArchimedeanGenerator clayton(double theta) {
        return {ArchimedeanFamily::clayton, theta};
    }
    static ArchimedeanGenerator gumbel(double theta) {
        return {ArchimedeanFamily::gumbel, theta};
    }
    static ArchimedeanGenerator amh(double theta) {
        return {ArchimedeanFamily::amh, theta};
    }

    // phi(t), t in [0, 1]
    double value(double t) const;
    // pseudo-inverse; all families here are strict so this is the plain inverse
    double inverse(double s) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

    // generator of phi(t^m) on top of the current exponent
    ArchimedeanGenerator powered(double m) const;

    ArchimedeanFamily family() const { return family_; }
    double theta() const { return theta_; }
    double exponent() const { return exponent_; }

    // phi'(t) + t phi''(t) >= 0 on (0,1): the condition making the induced
    // copula TP2. Holds analytically for all three families on their
    // parameter domains and is preserved under the power transform.
    bool tp2_condition_holds() const;

    std::string describe() const;

private:
    ArchimedeanFamily family_;
    double theta_;
    double exponent_;

    double base_value(double t) const;
    double base_inverse(double s) const;
    double base_derivative(double t) const;
    double base_second_derivative(double t) const;
};

// C(u,v) = phi^{[-1]}(phi(u) + phi(v)); boundary values by continuity
double archimedean_cdf(const ArchimedeanGenerator& g, double u, double v);

} // namespace bivcox
