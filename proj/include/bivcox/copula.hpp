#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bivcox/generator.hpp"
#include "bivcox/pickands.hpp"

namespace bivcox {

// Evaluable bivariate copula. Immutable value type; evaluation is pure, so
// instances can be shared freely across threads.
class Copula {
public:
    enum class Kind {
        product,
        clayton,
        gumbel,
        amh,
        gumbel_barnett,
        archimedean,          // via generator, C = phi^{-1}(phi(u)+phi(v))
        extreme_value,        // via Pickands function
        extended_archimedean, // u^{1-kappa} v^{1-eta} C_phi(u^kappa, v^eta)
        custom,               // arbitrary closure (propagated copulas, test doubles)
    };

    static Copula product();
    static Copula clayton(double theta);     // theta > 0
    static Copula gumbel(double theta);      // theta >= 1
    static Copula amh(double theta);         // theta in [0, 1)
    static Copula gumbel_barnett(double theta); // theta in (0, 1]
    static Copula archimedean(ArchimedeanGenerator g);
    static Copula extreme_value(PickandsFunction a);
    static Copula extended_archimedean(ArchimedeanGenerator g, double kappa, double eta);
    static Copula custom(std::string label, std::function<double(double, double)> cdf,
                         std::optional<bool> tp2 = std::nullopt);

    double cdf(double u, double v) const;
    double operator()(double u, double v) const { return cdf(u, v); }

    // dC^2/du dv on the open square; closed form for product, clayton and
    // gumbel, central finite differences otherwise
    double density(double u, double v) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double theta() const { return theta_; }
    double kappa() const { return kappa_; }
    double eta() const { return eta_; }
    const ArchimedeanGenerator* generator() const { return generator_.get(); }
    const PickandsFunction* pickands() const { return pickands_.get(); }

    // true/false when the TP2 property of the family is known, nullopt when
    // it has to be established numerically
    std::optional<bool> known_tp2() const;

private:
    Copula() = default;

    Kind kind_ = Kind::product;
    std::string name_ = "product";
    double theta_ = 0.0;
    double kappa_ = 1.0;
    double eta_ = 1.0;
    std::shared_ptr<const ArchimedeanGenerator> generator_;
    std::shared_ptr<const PickandsFunction> pickands_;
    std::function<double(double, double)> fn_;
    std::optional<bool> custom_tp2_;

    double interior_cdf(double u, double v) const;
};

// Pickands representation C(u,v) = exp(log(uv) A(log v / log uv)); boundary
// values by the uv-consistent limits
double evc_from_pickands(const PickandsFunction& a, double u, double v);

// rho = 12 * int C du dv - 3, midpoint rule with `resolution` points per axis
double spearman_rho(const Copula& c, int resolution = 512);

} // namespace bivcox
