#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bivcox/covariate.hpp"
#include "bivcox/estimation.hpp"

namespace bivcox {

struct ZGrid {
    double min = 0.0;
    double max = 0.3;
    int points = 31;

    std::vector<double> values() const;
};

// Mirrors the JSON config consumed by the CLI. Every run is fully determined
// by this struct; wall-clock seeding is deliberately impossible.
struct ExperimentConfig {
    std::string experiment; // stability | case-study | misspec | figures

    std::string baseline_family = "clayton";
    double theta = 3.0;

    std::vector<double> alpha_coefs{1.5};
    std::vector<double> beta_coefs{2.0};

    WeibullSurvival margin_x{2.0, 12000.0};
    WeibullSurvival margin_y{1.5, 8000.0};

    std::vector<std::vector<double>> strata{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    std::vector<std::size_t> sample_sizes{200, 100, 100};

    ZGrid z_grid;
    std::vector<double> z_values{0.0, 0.25, 0.5, 1.0}; // figures
    int figure_resolution = 101;

    std::size_t replications = 1000;
    std::uint64_t seed = 0;
    bool has_seed = false;

    std::string out_dir = "out";
    std::string scheme = "grid"; // grid | mc

    std::string misspec_family = "amh";
    std::string link_mode = "estimated"; // misspec: known | estimated

    bool inject_oracle_theta = false;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ExperimentReport {
    std::string experiment;
    std::string provenance;
    nlohmann::json config_echo;
    nlohmann::json results;
    std::size_t replications_used = 0;
    std::size_t exclusions = 0;
    std::size_t spot_check_failures = 0;
    double runtime_seconds = 0.0; // kept out of report.json so outputs stay
                                  // byte-identical for identical configs

    nlohmann::json to_json(bool include_runtime = false) const;
};

// baseline sampled at z = 0, plug-in parameter, error of the propagated
// estimate across a scalar z grid
ExperimentReport run_stability(const ExperimentConfig& config);

// stratified model-M lifetimes, Cox link fits, tau plug-in at the reference
// stratum, per-stratum copula and Spearman errors
ExperimentReport run_case_study(const ExperimentConfig& config);

// same machinery with a deliberately wrong estimation family;
// link_mode "known" produces the error curve, "estimated" the stratum table
ExperimentReport run_misspecification(const ExperimentConfig& config);

// CSV grids of propagated densities and of propagated dependence functions
ExperimentReport emit_figures(const ExperimentConfig& config);

// dispatch on config.experiment
ExperimentReport run_experiment(const ExperimentConfig& config);

// mean, spread and both interval styles over replication values
struct Summary {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double ci_normal_lo = 0.0, ci_normal_hi = 0.0;
    double ci_pct_lo = 0.0, ci_pct_hi = 0.0;

    nlohmann::json to_json() const;
};

Summary summarize(std::vector<double> values);

std::uint64_t fnv1a64(const std::string& text);

} // namespace bivcox
