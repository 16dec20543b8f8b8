#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bivcox {

// Dependence function A on [0,1] of an extreme-value copula:
// A(0) = A(1) = 1, max(t, 1-t) <= A <= 1, A convex.
//
// Derived functions (covariate propagation, transitions, asymmetrization)
// are kept as closures over their parents rather than tabulated, so nested
// constructions stay exact; tabulation is only for checks and file output.
class PickandsFunction {
public:
    enum class Kind {
        constant_one,
        gumbel_logistic,
        asymmetric_logistic,
        tabulated,
        derived,
    };

    static PickandsFunction one();
    // A(s) = (s^theta + (1-s)^theta)^{1/theta}, theta >= 1
    static PickandsFunction gumbel_logistic(double theta);
    // B(s) = 1 - a + (a-b)s + (a^theta (1-s)^theta + b^theta s^theta)^{1/theta}
    // with a, b in (0,1], theta >= 1
    static PickandsFunction asymmetric_logistic(double alpha, double beta, double theta);
    // values on the uniform grid 0, 1/(n-1), ..., 1; evaluated by linear
    // interpolation (preserves convexity and the bounds of the data)
    static PickandsFunction tabulated(std::vector<double> values);
    static PickandsFunction derived(std::string label, std::function<double(double)> fn);

    double operator()(double s) const;

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    // family parameters; meaningful for gumbel_logistic / asymmetric_logistic
    double theta() const { return theta_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    std::vector<double> tabulate(std::size_t points) const;

private:
    PickandsFunction() = default;

    Kind kind_ = Kind::constant_one;
    std::string label_;
    double theta_ = 1.0;
    double alpha_ = 1.0;
    double beta_ = 1.0;
    std::shared_ptr<const std::vector<double>> values_;
    std::function<double(double)> fn_;
};

// Dependence function of C_{A1}(u^{1-kappa}, v^{1-eta}) * C_{A2}(u^kappa, v^eta),
// 0 < kappa, eta < 1.
PickandsFunction khoudraji_asymmetrize(const PickandsFunction& a1,
                                       const PickandsFunction& a2,
                                       double kappa, double eta);

} // namespace bivcox
