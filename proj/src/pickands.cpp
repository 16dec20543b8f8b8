#include "bivcox/pickands.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bivcox {

PickandsFunction PickandsFunction::one() {
    PickandsFunction a;
    a.kind_ = Kind::constant_one;
    a.label_ = "constant-one";
    return a;
}

PickandsFunction PickandsFunction::gumbel_logistic(double theta) {
    if (std::isnan(theta)) throw std::invalid_argument("gumbel_logistic: NaN theta");
    if (!(theta >= 1.0)) throw std::domain_error("gumbel_logistic requires theta >= 1");
    PickandsFunction a;
    a.kind_ = Kind::gumbel_logistic;
    a.label_ = "gumbel-logistic";
    a.theta_ = theta;
    return a;
}

PickandsFunction PickandsFunction::asymmetric_logistic(double alpha, double beta,
                                                       double theta) {
    if (std::isnan(alpha) || std::isnan(beta) || std::isnan(theta)) {
        throw std::invalid_argument("asymmetric_logistic: NaN parameter");
    }
    if (!(theta >= 1.0)) throw std::domain_error("asymmetric_logistic requires theta >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
        throw std::domain_error("asymmetric_logistic requires alpha, beta in (0, 1]");
    }
    PickandsFunction a;
    a.kind_ = Kind::asymmetric_logistic;
    a.label_ = "asymmetric-logistic";
    a.alpha_ = alpha;
    a.beta_ = beta;
    a.theta_ = theta;
    return a;
}

PickandsFunction PickandsFunction::tabulated(std::vector<double> values) {
    if (values.size() < 2) throw std::invalid_argument("tabulated: need at least 2 values");
    PickandsFunction a;
    a.kind_ = Kind::tabulated;
    a.label_ = "tabulated";
    a.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return a;
}

PickandsFunction PickandsFunction::derived(std::string label,
                                           std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("derived: empty function");
    PickandsFunction a;
    a.kind_ = Kind::derived;
    a.label_ = std::move(label);
    a.fn_ = std::move(fn);
    return a;
}

double PickandsFunction::operator()(double s) const {
    if (std::isnan(s)) throw std::invalid_argument("pickands argument is NaN");
    if (s < 0.0 || s > 1.0) throw std::domain_error("pickands argument outside [0, 1]");
    switch (kind_) {
        case Kind::constant_one:
            return 1.0;
        case Kind::gumbel_logistic:
            return std::pow(std::pow(s, theta_) + std::pow(1.0 - s, theta_), 1.0 / theta_);
        case Kind::asymmetric_logistic:
            return 1.0 - alpha_ + (alpha_ - beta_) * s +
                   std::pow(std::pow(alpha_ * (1.0 - s), theta_) +
                                std::pow(beta_ * s, theta_),
                            1.0 / theta_);
        case Kind::tabulated: {
            const auto& v = *values_;
            const double pos = s * static_cast<double>(v.size() - 1);
            const auto i = static_cast<std::size_t>(pos);
            if (i + 1 >= v.size()) return v.back();
            const double w = pos - static_cast<double>(i);
            return (1.0 - w) * v[i] + w * v[i + 1];
        }
        case Kind::derived:
            return fn_(s);
    }
    return 1.0;
}

std::vector<double> PickandsFunction::tabulate(std::size_t points) const {
    if (points < 2) throw std::invalid_argument("tabulate: need at least 2 points");
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = (*this)(static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return out;
}

PickandsFunction khoudraji_asymmetrize(const PickandsFunction& a1,
                                       const PickandsFunction& a2,
                                       double kappa, double eta) {
    if (std::isnan(kappa) || std::isnan(eta)) {
        throw std::invalid_argument("khoudraji_asymmetrize: NaN exponent");
    }
    if (!(kappa > 0.0 && kappa < 1.0) || !(eta > 0.0 && eta < 1.0)) {
        throw std::domain_error("khoudraji_asymmetrize requires kappa, eta in (0, 1)");
    }
    // The component with exponents (1-kappa, 1-eta) contributes total weight
    // (1-kappa)(1-s) + (1-eta)s at the point s; the other gets the rest.
    return PickandsFunction::derived(
        "khoudraji(" + a1.label() + "," + a2.label() + ")",
        [a1, a2, kappa, eta](double s) {
            const double sb = 1.0 - s;
            const double w1 = (1.0 - kappa) * sb + (1.0 - eta) * s;
            const double w2 = kappa * sb + eta * s;
            return w1 * a1((1.0 - eta) * s / w1) + w2 * a2(eta * s / w2);
        });
}

} // namespace bivcox
