#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bivcox/copula.hpp"
#include "bivcox/covariate.hpp"
#include "bivcox/rng.hpp"

namespace bivcox {

// Paired draws, either copula-scale (u,v) or lifetimes (x,y), with an
// optional covariate label per pair.
struct SamplePairSet {
    bool lifetimes = false;
    std::vector<double> a;
    std::vector<double> b;
    std::size_t covariate_dim = 0;
    std::vector<double> covariates; // row-major size() x covariate_dim

    std::size_t size() const { return a.size(); }
    void reserve(std::size_t n) {
        a.reserve(n);
        b.reserve(n);
    }
    void append(double x, double y) {
        a.push_back(x);
        b.push_back(y);
    }
};

// conditional distribution of V given U = u, i.e. dC/du; analytic for
// archimedean and extreme-value kinds, central differences otherwise
double conditional_cdf(const Copula& c, double u, double v);

// conditional-distribution method: u uniform, v solves dC/du(u, .) = p by
// bisection (interval tolerance 1e-12, at most 200 halvings)
SamplePairSet sample_copula(const Copula& c, std::size_t n, Rng& rng);

SamplePairSet sample_archimedean(const ArchimedeanGenerator& g, std::size_t n, Rng& rng);

// one-sided stable draw with Laplace transform exp(-s^index), index in (0,1];
// Chambers-Mallows-Stuck form specialised to the totally skewed case
double sample_positive_stable(double index, Rng& rng);

// Gumbel copula pairs via conditional independence given a positive stable
// frailty W: U_i = exp(-(E_i/W)^{1/theta})
SamplePairSet sample_gumbel_via_frailty(double theta, std::size_t n, Rng& rng);

// pairs from C1(u^{1-kappa}, v^{1-eta}) C2(u^kappa, v^eta) by componentwise
// max of power-transformed component draws; kappa/eta in {0,1} reduce to a
// single component
SamplePairSet sample_khoudraji(const Copula& c1, const Copula& c2, double kappa,
                               double eta, std::size_t n, Rng& rng);

// lifetimes under the model at covariate z: draws from the propagated copula
// pushed through the inverse stressed margins
SamplePairSet sample_model_m(const Copula& baseline, const WeibullSurvival& margin_x,
                             const WeibullSurvival& margin_y, const CovariateLink& link,
                             std::span<const double> z, std::size_t n, Rng& rng);

} // namespace bivcox
