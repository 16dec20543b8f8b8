// Command-line front end; talks to the library through the C interface only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bivcox.h"

namespace {

using nlohmann::json;

[[noreturn]] void die(const std::string& context) {
    std::cerr << "error: " << context;
    const char* detail = bivcox_last_error();
    if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(1);
}

void check(int rc, const std::string& context) {
    if (rc != BIVCOX_OK) die(context);
}

struct CopulaHandle {
    bivcox_copula* ptr = nullptr;
    ~CopulaHandle() { bivcox_copula_free(ptr); }
};

struct PickandsHandle {
    bivcox_pickands* ptr = nullptr;
    ~PickandsHandle() { bivcox_pickands_free(ptr); }
};

struct RngHandle {
    bivcox_rng* ptr = nullptr;
    ~RngHandle() { bivcox_rng_free(ptr); }
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { bivcox_string_free(ptr); }
};

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(std::stod(field));
    }
    return out;
}

// "u1,v1;u2,v2;..."
std::vector<std::pair<double, double>> parse_points(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        const auto vals = parse_doubles(pair);
        if (vals.size() != 2) {
            std::cerr << "error: point '" << pair << "' is not 'u,v'\n";
            std::exit(1);
        }
        out.emplace_back(vals[0], vals[1]);
    }
    return out;
}

struct LinkArgs {
    std::string alpha = "1.5";
    std::string beta = "2.0";
    std::string z = "0.0";

    std::vector<double> alpha_coefs() const { return parse_doubles(alpha); }
    std::vector<double> beta_coefs() const { return parse_doubles(beta); }
    std::vector<double> z_values() const { return parse_doubles(z); }
};

void add_link_options(CLI::App* cmd, LinkArgs& link) {
    cmd->add_option("--alpha", link.alpha, "link coefficients of Phi (comma list)");
    cmd->add_option("--beta", link.beta, "link coefficients of Psi (comma list)");
    cmd->add_option("--z", link.z, "covariate vector (comma list)");
}

std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(1);
    }
    return file;
}

// returns rows of numeric fields; `header` receives the column names
std::vector<std::vector<double>> read_csv(std::istream& is,
                                          std::vector<std::string>& header) {
    std::string line;
    if (!std::getline(is, line)) {
        std::cerr << "error: empty csv input\n";
        std::exit(1);
    }
    std::stringstream hs(line);
    std::string field;
    while (std::getline(hs, field, ',')) header.push_back(field);
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_doubles(line));
        if (rows.back().size() != header.size()) {
            std::cerr << "error: csv row with wrong field count\n";
            std::exit(1);
        }
    }
    return rows;
}

int cmd_propagate(const std::string& family, double theta, const LinkArgs& link,
                  const std::string& points_text, bool pickands_mode,
                  const std::string& out_path) {
    const auto alpha = link.alpha_coefs();
    const auto beta = link.beta_coefs();
    const auto z = link.z_values();
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);

    if (pickands_mode) {
        PickandsHandle base, propagated;
        check(bivcox_pickands_gumbel(theta, &base.ptr), "pickands construction");
        check(bivcox_pickands_propagate(base.ptr, alpha.data(), beta.data(),
                                        alpha.size(), z.data(), z.size(),
                                        &propagated.ptr),
              "pickands propagation");
        os << "s,B\n";
        for (int i = 0; i <= 100; ++i) {
            const double s = static_cast<double>(i) / 100.0;
            double b = 0.0;
            check(bivcox_pickands_eval(propagated.ptr, s, &b), "pickands evaluation");
            os << format(s) << "," << format(b) << "\n";
        }
        return 0;
    }

    CopulaHandle baseline, propagated;
    check(bivcox_copula_family(family.c_str(), theta, &baseline.ptr),
          "copula construction");
    check(bivcox_copula_propagate(baseline.ptr, alpha.data(), beta.data(), alpha.size(),
                                  z.data(), z.size(), &propagated.ptr),
          "copula propagation");
    auto points = parse_points(points_text);
    os << "u,v,C\n";
    for (const auto& [u, v] : points) {
        double c = 0.0;
        check(bivcox_copula_cdf(propagated.ptr, u, v, &c), "copula evaluation");
        os << format(u) << "," << format(v) << "," << format(c) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& family, double theta, bool propagated,
               const LinkArgs& link, const std::string& checks, int resolution,
               double margin, const std::string& out_path) {
    CopulaHandle target;
    if (propagated) {
        const auto alpha = link.alpha_coefs();
        const auto beta = link.beta_coefs();
        const auto z = link.z_values();
        CopulaHandle baseline;
        check(bivcox_copula_family(family.c_str(), theta, &baseline.ptr),
              "copula construction");
        check(bivcox_copula_propagate(baseline.ptr, alpha.data(), beta.data(),
                                      alpha.size(), z.data(), z.size(), &target.ptr),
              "copula propagation");
    } else {
        check(bivcox_copula_family(family.c_str(), theta, &target.ptr),
              "copula construction");
    }
    OwnedString report;
    check(bivcox_verify_copula(target.ptr, checks.c_str(), resolution, margin,
                               &report.ptr),
          "verification");
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << report.ptr << "\n";
    return 0;
}

int cmd_sample(const std::string& family, double theta, std::size_t n,
               std::uint64_t seed, std::uint64_t stream, const std::string& mode,
               const LinkArgs& link, const std::vector<double>& margins,
               const std::string& out_path) {
    RngHandle rng;
    check(bivcox_rng_new(seed, stream, &rng.ptr), "rng");
    std::vector<double> a(n), b(n);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);

    if (mode == "copula") {
        CopulaHandle c;
        check(bivcox_copula_family(family.c_str(), theta, &c.ptr), "copula construction");
        check(bivcox_sample_copula(c.ptr, n, rng.ptr, a.data(), b.data()), "sampling");
        os << "u,v\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << format(a[i]) << "," << format(b[i]) << "\n";
        }
    } else if (mode == "frailty") {
        check(bivcox_sample_gumbel_frailty(theta, n, rng.ptr, a.data(), b.data()),
              "frailty sampling");
        os << "u,v\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << format(a[i]) << "," << format(b[i]) << "\n";
        }
    } else if (mode == "model") {
        const auto alpha = link.alpha_coefs();
        const auto beta = link.beta_coefs();
        const auto z = link.z_values();
        check(bivcox_sample_model(family.c_str(), theta, margins[0], margins[1],
                                  margins[2], margins[3], alpha.data(), beta.data(),
                                  alpha.size(), z.data(), z.size(), n, rng.ptr,
                                  a.data(), b.data()),
              "model sampling");
        os << "x,y";
        for (std::size_t k = 0; k < z.size(); ++k) os << ",z" << (k + 1);
        os << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << format(a[i]) << "," << format(b[i]);
            for (double zk : z) os << "," << format(zk);
            os << "\n";
        }
    } else {
        std::cerr << "error: unknown sample mode '" << mode << "'\n";
        return 1;
    }
    return 0;
}

int cmd_estimate(const std::string& input, const std::string& family, bool cox,
                 const std::string& out_path) {
    std::ifstream file_in;
    std::istream* is = &std::cin;
    if (!input.empty() && input != "-") {
        file_in.open(input);
        if (!file_in) {
            std::cerr << "error: cannot open " << input << "\n";
            return 1;
        }
        is = &file_in;
    }
    std::vector<std::string> header;
    const auto rows = read_csv(*is, header);
    if (header.size() < 2 || rows.empty()) {
        std::cerr << "error: need at least two columns and one row\n";
        return 1;
    }
    const std::size_t n = rows.size();
    const std::size_t dim = header.size() - 2;
    std::vector<double> x(n), y(n), z(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rows[i][0];
        y[i] = rows[i][1];
        for (std::size_t k = 0; k < dim; ++k) z[i * dim + k] = rows[i][k + 2];
    }

    json out;
    out["n"] = n;
    double tau = 0.0, rho = 0.0;
    check(bivcox_kendall_tau(x.data(), y.data(), n, &tau), "kendall tau");
    check(bivcox_spearman_rho_empirical(x.data(), y.data(), n, &rho), "spearman rho");
    out["kendall_tau"] = tau;
    out["spearman_rho"] = rho;
    if (!family.empty()) {
        double theta = 0.0;
        check(bivcox_theta_from_tau(family.c_str(), tau, &theta), "plug-in theta");
        out["family"] = family;
        out["theta_hat"] = theta;
    }
    if (cox) {
        if (dim == 0) {
            std::cerr << "error: --cox needs covariate columns\n";
            return 1;
        }
        auto fit_one = [&](const std::vector<double>& times, const char* label) {
            std::vector<double> coefs(dim, 0.0);
            int converged = 0, iterations = 0;
            double loglik = 0.0;
            check(bivcox_cox_fit(times.data(), z.data(), n, dim, 0, 0.0, coefs.data(),
                                 &converged, &iterations, &loglik),
                  std::string("cox fit (") + label + ")");
            json fit;
            fit["coefficients"] = coefs;
            fit["converged"] = converged != 0;
            fit["iterations"] = iterations;
            fit["log_partial_likelihood"] = loglik;
            out[label] = fit;
        };
        fit_one(x, "cox_x");
        fit_one(y, "cox_y");
    }
    std::ofstream file_out;
    std::ostream& os = open_output(file_out, out_path);
    os << out.dump(2) << "\n";
    return 0;
}

int cmd_experiment(const std::string& kind, const std::string& config_path,
                   std::uint64_t seed, bool has_seed, const std::string& out_dir,
                   const std::string& scheme, std::size_t reps, int threads,
                   bool quiet) {
    json config = json::object();
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot open config " << config_path << "\n";
            return 1;
        }
        try {
            is >> config;
        } catch (const std::exception& e) {
            std::cerr << "error: bad config json: " << e.what() << "\n";
            return 1;
        }
    }
    config["experiment"] = kind;
    if (has_seed) config["seed"] = seed;
    if (!out_dir.empty()) config["out_dir"] = out_dir;
    if (!scheme.empty()) config["scheme"] = scheme;
    if (reps > 0) config["replications"] = reps;
    if (threads > 0) config["threads"] = threads;

    OwnedString report;
    const std::string text = config.dump();
    check(bivcox_experiment_run(text.c_str(), &report.ptr), "experiment");
    if (!quiet) std::cout << report.ptr << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bivariate Cox / copula toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bivcox_version()));

    // propagate
    auto* propagate = app.add_subcommand(
        "propagate", "evaluate a propagated copula or dependence function");
    std::string p_family = "clayton";
    double p_theta = 3.0;
    LinkArgs p_link;
    std::string p_points = "0.25,0.5;0.5,0.5;0.75,0.75";
    bool p_pickands = false;
    std::string p_out;
    propagate->add_option("--family,-f", p_family, "baseline copula family");
    propagate->add_option("--theta,-t", p_theta, "family parameter");
    add_link_options(propagate, p_link);
    propagate->add_option("--points", p_points, "evaluation points 'u,v;u,v;...'");
    propagate->add_flag("--pickands", p_pickands,
                        "evaluate the propagated Gumbel dependence function instead");
    propagate->add_option("--out,-o", p_out, "output file (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run dependence checks on a copula");
    std::string v_family = "clayton";
    double v_theta = 3.0;
    bool v_propagated = false;
    LinkArgs v_link;
    std::string v_checks = "axioms,tp2,pqd,min-id";
    int v_resolution = 64;
    double v_margin = 1e-3;
    std::string v_out;
    verify->add_option("--family,-f", v_family, "copula family");
    verify->add_option("--theta,-t", v_theta, "family parameter");
    verify->add_flag("--propagated", v_propagated, "verify the propagated copula");
    add_link_options(verify, v_link);
    verify->add_option("--checks", v_checks, "comma list: axioms,tp2,pqd,min-id");
    verify->add_option("--resolution", v_resolution, "grid points per axis");
    verify->add_option("--margin", v_margin, "grid boundary margin");
    verify->add_option("--out,-o", v_out, "output file (default stdout)");

    // sample
    auto* sample = app.add_subcommand("sample", "draw pairs and emit CSV");
    std::string s_family = "clayton";
    double s_theta = 3.0;
    std::size_t s_n = 1000;
    std::uint64_t s_seed = 0;
    std::uint64_t s_stream = 0;
    std::string s_mode = "copula";
    LinkArgs s_link;
    std::vector<double> s_margins{2.0, 12000.0, 1.5, 8000.0};
    std::string s_out;
    sample->add_option("--family,-f", s_family, "copula family");
    sample->add_option("--theta,-t", s_theta, "family parameter");
    sample->add_option("-n,--count", s_n, "number of pairs");
    sample->add_option("--seed", s_seed, "rng seed")->required();
    sample->add_option("--stream", s_stream, "rng stream index");
    sample->add_option("--mode", s_mode, "copula | frailty | model");
    add_link_options(sample, s_link);
    sample->add_option("--margins", s_margins,
                       "model margins: x_shape x_scale y_shape y_scale")
        ->expected(4);
    sample->add_option("--out,-o", s_out, "output file (default stdout)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "estimators from CSV input");
    std::string e_input;
    std::string e_family;
    bool e_cox = false;
    std::string e_out;
    estimate->add_option("--input,-i", e_input, "input CSV (default stdin)");
    estimate->add_option("--family,-f", e_family,
                         "plug-in family for theta (clayton|gumbel|amh)");
    estimate->add_flag("--cox", e_cox, "fit Cox links on both margins");
    estimate->add_option("--out,-o", e_out, "output file (default stdout)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a configured study");
    std::string x_kind;
    std::string x_config;
    std::uint64_t x_seed = 0;
    bool x_has_seed = false;
    std::string x_out;
    std::string x_scheme;
    std::size_t x_reps = 0;
    int x_threads = 0;
    bool x_quiet = false;
    experiment
        ->add_option("kind", x_kind, "stability | case-study | misspec | figures")
        ->required();
    experiment->add_option("--config", x_config, "JSON config file");
    auto* seed_opt = experiment->add_option("--seed", x_seed, "master seed override");
    experiment->add_option("--out", x_out, "output directory override");
    experiment->add_option("--scheme", x_scheme, "metric scheme: grid | mc");
    experiment->add_option("--reps", x_reps, "replication count override");
    experiment->add_option("--threads", x_threads, "worker thread count");
    experiment->add_flag("--quiet", x_quiet, "suppress report on stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (propagate->parsed()) {
            return cmd_propagate(p_family, p_theta, p_link, p_points, p_pickands, p_out);
        }
        if (verify->parsed()) {
            return cmd_verify(v_family, v_theta, v_propagated, v_link, v_checks,
                              v_resolution, v_margin, v_out);
        }
        if (sample->parsed()) {
            return cmd_sample(s_family, s_theta, s_n, s_seed, s_stream, s_mode, s_link,
                              s_margins, s_out);
        }
        if (estimate->parsed()) {
            return cmd_estimate(e_input, e_family, e_cox, e_out);
        }
        if (experiment->parsed()) {
            x_has_seed = seed_opt->count() > 0;
            return cmd_experiment(x_kind, x_config, x_seed, x_has_seed, x_out, x_scheme,
                                  x_reps, x_threads, x_quiet);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
