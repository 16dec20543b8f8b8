#include "bivcox/generator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bivcox {

const char* family_name(ArchimedeanFamily f) {
    switch (f) {
        case ArchimedeanFamily::clayton: return "clayton";
        case ArchimedeanFamily::gumbel: return "gumbel";
        case ArchimedeanFamily::amh: return "amh";
    }
    return "?";
}

ArchimedeanGenerator::ArchimedeanGenerator(ArchimedeanFamily family, double theta,
                                           double exponent)
    : family_(family), theta_(theta), exponent_(exponent) {
    if (std::isnan(theta) || std::isnan(exponent)) {
        throw std::invalid_argument("generator parameters must not be NaN");
    }
    if (!(exponent > 0.0) || std::isinf(exponent)) {
        throw std::domain_error("generator exponent must be positive and finite");
    }
    switch (family_) {
        case ArchimedeanFamily::clayton:
            if (!(theta > 0.0)) throw std::domain_error("clayton requires theta > 0");
            break;
        case ArchimedeanFamily::gumbel:
            if (!(theta >= 1.0)) throw std::domain_error("gumbel requires theta >= 1");
            break;
        case ArchimedeanFamily::amh:
            if (!(theta >= 0.0 && theta < 1.0))
                throw std::domain_error("amh requires theta in [0, 1)");
            break;
    }
}

double ArchimedeanGenerator::base_value(double t) const {
    switch (family_) {
        case ArchimedeanFamily::clayton:
            return std::pow(t, -theta_) - 1.0;
        case ArchimedeanFamily::gumbel:
            return std::pow(-std::log(t), theta_);
        case ArchimedeanFamily::amh:
            return std::log((1.0 - theta_ * (1.0 - t)) / t);
    }
    return 0.0;
}

double ArchimedeanGenerator::base_inverse(double s) const {
    switch (family_) {
        case ArchimedeanFamily::clayton:
            return std::pow(1.0 + s, -1.0 / theta_);
        case ArchimedeanFamily::gumbel:
            return std::exp(-std::pow(s, 1.0 / theta_));
        case ArchimedeanFamily::amh:
            return (1.0 - theta_) / (std::exp(s) - theta_);
    }
    return 0.0;
}

double ArchimedeanGenerator::base_derivative(double t) const {
    switch (family_) {
        case ArchimedeanFamily::clayton:
            return -theta_ * std::pow(t, -theta_ - 1.0);
        case ArchimedeanFamily::gumbel:
            return -theta_ * std::pow(-std::log(t), theta_ - 1.0) / t;
        case ArchimedeanFamily::amh:
            return theta_ / (1.0 - theta_ * (1.0 - t)) - 1.0 / t;
    }
    return 0.0;
}

double ArchimedeanGenerator::base_second_derivative(double t) const {
    switch (family_) {
        case ArchimedeanFamily::clayton:
            return theta_ * (theta_ + 1.0) * std::pow(t, -theta_ - 2.0);
        case ArchimedeanFamily::gumbel: {
            const double x = -std::log(t);
            return theta_ * std::pow(x, theta_ - 2.0) * ((theta_ - 1.0) + x) / (t * t);
        }
        case ArchimedeanFamily::amh: {
            const double d = 1.0 - theta_ * (1.0 - t);
            return -theta_ * theta_ / (d * d) + 1.0 / (t * t);
        }
    }
    return 0.0;
}

double ArchimedeanGenerator::value(double t) const {
    if (std::isnan(t)) throw std::invalid_argument("generator argument is NaN");
    if (t < 0.0 || t > 1.0) throw std::domain_error("generator argument outside [0, 1]");
    if (exponent_ == 1.0) return base_value(t);
    return base_value(std::pow(t, exponent_));
}

double ArchimedeanGenerator::inverse(double s) const {
    if (std::isnan(s)) throw std::invalid_argument("generator inverse argument is NaN");
    if (s < 0.0) throw std::domain_error("generator inverse argument must be >= 0");
    const double t0 = base_inverse(s);
    if (exponent_ == 1.0) return t0;
    return std::pow(t0, 1.0 / exponent_);
}

double ArchimedeanGenerator::derivative(double t) const {
    if (exponent_ == 1.0) return base_derivative(t);
    const double tm = std::pow(t, exponent_);
    return exponent_ * std::pow(t, exponent_ - 1.0) * base_derivative(tm);
}

double ArchimedeanGenerator::second_derivative(double t) const {
    if (exponent_ == 1.0) return base_second_derivative(t);
    const double m = exponent_;
    const double tm = std::pow(t, m);
    return m * (m - 1.0) * std::pow(t, m - 2.0) * base_derivative(tm) +
           m * m * std::pow(t, 2.0 * m - 2.0) * base_second_derivative(tm);
}

ArchimedeanGenerator ArchimedeanGenerator::powered(double m) const {
    if (!(m > 0.0)) throw std::domain_error("power transform requires m > 0");
    return {family_, theta_, exponent_ * m};
}

bool ArchimedeanGenerator::tp2_condition_holds() const {
    // clayton: phi' + t phi'' = theta^2 t^{-theta-1}
    // gumbel:  theta (theta-1) (-log t)^{theta-2} / t
    // amh:     theta (1-theta) / (1 - theta(1-t))^2
    // All nonnegative on the accepted parameter domains; the power transform
    // preserves the condition.
    return true;
}

std::string ArchimedeanGenerator::describe() const {
    std::ostringstream os;
    os << family_name(family_) << "(theta=" << theta_;
    if (exponent_ != 1.0) os << ", exponent=" << exponent_;
    os << ")";
    return os.str();
}

double archimedean_cdf(const ArchimedeanGenerator& g, double u, double v) {
    if (std::isnan(u) || std::isnan(v)) {
        throw std::invalid_argument("archimedean_cdf: NaN input");
    }
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
        throw std::domain_error("archimedean_cdf: arguments outside [0, 1]");
    }
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    return g.inverse(g.value(u) + g.value(v));
}

} // namespace bivcox
