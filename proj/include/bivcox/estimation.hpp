#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bivcox/copula.hpp"
#include "bivcox/sampling.hpp"

namespace bivcox {

// Paired lifetimes with covariate labels, the estimator input.
struct ObservationSet {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t covariate_dim = 0;
    std::vector<double> z; // row-major size() x covariate_dim

    std::size_t size() const { return x.size(); }
    void validate() const;
};

// (concordant - discordant) / C(n,2); pairs tied in either coordinate count
// as neither, the denominator stays C(n,2)
double kendall_tau(std::span<const double> x, std::span<const double> y);
double kendall_tau(const SamplePairSet& pairs);

enum class PlugInFamily { clayton, gumbel, amh };

PlugInFamily plugin_family_from_name(const std::string& name);

// plug-in parameter from an empirical tau:
//   clayton: 2 tau / (1 - tau)    gumbel: 1 / (1 - tau)    amh: 2 / (3 - tau)
double theta_from_tau(PlugInFamily family, double tau);
bool theta_in_domain(PlugInFamily family, double theta);

// rank correlation (Pearson correlation of midranks)
double spearman_rho_empirical(std::span<const double> x, std::span<const double> y);
double spearman_rho_empirical(const SamplePairSet& pairs);

struct FitResult {
    std::vector<double> coefficients;
    bool converged = false;
    int iterations = 0;
    double log_likelihood = 0.0;
};

// Cox partial-likelihood fit, no censoring (every time is an event), Breslow
// handling of ties, safeguarded Newton (step halving on likelihood decrease).
// Throws on a singular information matrix; non-convergence is flagged, not
// thrown.
FitResult cox_pl_fit(std::span<const double> times,
                     std::span<const double> covariates_row_major, std::size_t dim,
                     int max_iter = 50, double tol = 1e-8);

// mean relative deviation between two copulas on the unit square:
// grid:         10x10 cell midpoints, each weighted by the exact copula mass
//               of its cell (rectangle sum of the true cdf) -- the literal
//               dC-weighted integral
// grid_uniform: plain average over the 10x10 interior lattice k/11; this is
//               the variant that reproduces the published simulation tables
// monte_carlo:  average over draws from `truth` (dC by sampling)
enum class MreScheme { grid, grid_uniform, monte_carlo };

struct MreOptions {
    int grid_points = 10;
    int mc_draws = 10000;
    std::uint64_t mc_seed = 0x0B1C0E5EEDULL;
};

// precomputed nodes and weights, reusable across many estimated copulas
struct MreSupport {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> w;       // normalised to 1
    std::vector<double> truth_cdf;
};

MreSupport make_mre_support(const Copula& truth, MreScheme scheme,
                            const MreOptions& options = {});
double mean_relative_error(const MreSupport& support, const Copula& estimate);
double mean_relative_error(const Copula& truth, const Copula& estimate,
                           MreScheme scheme = MreScheme::grid,
                           const MreOptions& options = {});

} // namespace bivcox
