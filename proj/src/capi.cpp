#include "bivcox.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <span>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bivcox/copula.hpp"
#include "bivcox/covariate.hpp"
#include "bivcox/estimation.hpp"
#include "bivcox/experiments.hpp"
#include "bivcox/pickands.hpp"
#include "bivcox/rng.hpp"
#include "bivcox/sampling.hpp"
#include "bivcox/verify.hpp"

struct bivcox_copula {
    bivcox::Copula impl;
};

struct bivcox_pickands {
    bivcox::PickandsFunction impl;
};

struct bivcox_rng {
    bivcox::Rng impl;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* message) {
    g_last_error = message;
    return code;
}

// translate C++ failures to codes; bad_alloc and unknown errors map to internal
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(BIVCOX_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(BIVCOX_ERR_DOMAIN, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(BIVCOX_ERR_IO, e.what());
    } catch (const std::runtime_error& e) {
        return fail(BIVCOX_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BIVCOX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BIVCOX_ERR_INTERNAL, e.what());
    }
}

int require(bool ok, const char* message) {
    return ok ? BIVCOX_OK : fail(BIVCOX_ERR_INVALID_ARGUMENT, message);
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bivcox::Copula make_family(const char* family, double theta) {
    const std::string f = family;
    if (f == "product") return bivcox::Copula::product();
    if (f == "clayton") return bivcox::Copula::clayton(theta);
    if (f == "gumbel") return bivcox::Copula::gumbel(theta);
    if (f == "amh") return bivcox::Copula::amh(theta);
    if (f == "gumbel-barnett") return bivcox::Copula::gumbel_barnett(theta);
    throw std::invalid_argument("unknown copula family: " + f);
}

bivcox::ArchimedeanGenerator make_generator(const char* family, double theta) {
    const std::string f = family;
    if (f == "clayton") return bivcox::ArchimedeanGenerator::clayton(theta);
    if (f == "gumbel") return bivcox::ArchimedeanGenerator::gumbel(theta);
    if (f == "amh") return bivcox::ArchimedeanGenerator::amh(theta);
    throw std::invalid_argument("not an archimedean family: " + f);
}

bivcox::CovariateLink make_link(const double* alpha_coefs, const double* beta_coefs,
                                size_t coef_len) {
    if (alpha_coefs == nullptr || beta_coefs == nullptr || coef_len == 0) {
        throw std::invalid_argument("link coefficients must be nonempty");
    }
    return {{alpha_coefs, alpha_coefs + coef_len}, {beta_coefs, beta_coefs + coef_len}};
}

} // namespace

extern "C" {

const char* bivcox_version(void) { return "1.0.0"; }

const char* bivcox_last_error(void) { return g_last_error.c_str(); }

void bivcox_string_free(char* s) { delete[] s; }

int bivcox_copula_family(const char* family, double theta, bivcox_copula** out) {
    if (int rc = require(family && out, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_copula{make_family(family, theta)};
        return BIVCOX_OK;
    });
}

int bivcox_copula_extreme_value(const bivcox_pickands* a, bivcox_copula** out) {
    if (int rc = require(a && out, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_copula{bivcox::Copula::extreme_value(a->impl)};
        return BIVCOX_OK;
    });
}

int bivcox_copula_propagate(const bivcox_copula* baseline, const double* alpha_coefs,
                            const double* beta_coefs, size_t coef_len, const double* z,
                            size_t z_len, bivcox_copula** out) {
    if (int rc = require(baseline && z && out, "null argument")) return rc;
    return guarded([&] {
        const auto link = make_link(alpha_coefs, beta_coefs, coef_len);
        *out = new bivcox_copula{
            bivcox::propagate_copula(baseline->impl, link, std::span(z, z_len))};
        return BIVCOX_OK;
    });
}

int bivcox_copula_propagate_archimedean(const char* family, double theta,
                                        const double* alpha_coefs,
                                        const double* beta_coefs, size_t coef_len,
                                        const double* z, size_t z_len,
                                        bivcox_copula** out) {
    if (int rc = require(family && z && out, "null argument")) return rc;
    return guarded([&] {
        const auto link = make_link(alpha_coefs, beta_coefs, coef_len);
        *out = new bivcox_copula{bivcox::propagate_archimedean_copula(
            make_generator(family, theta), link, std::span(z, z_len))};
        return BIVCOX_OK;
    });
}

int bivcox_copula_cdf(const bivcox_copula* c, double u, double v, double* out) {
    if (int rc = require(c && out, "null argument")) return rc;
    return guarded([&] {
        *out = c->impl.cdf(u, v);
        return BIVCOX_OK;
    });
}

int bivcox_copula_density(const bivcox_copula* c, double u, double v, double* out) {
    if (int rc = require(c && out, "null argument")) return rc;
    return guarded([&] {
        *out = c->impl.density(u, v);
        return BIVCOX_OK;
    });
}

int bivcox_copula_spearman_rho(const bivcox_copula* c, double* out) {
    if (int rc = require(c && out, "null argument")) return rc;
    return guarded([&] {
        *out = bivcox::spearman_rho(c->impl);
        return BIVCOX_OK;
    });
}

void bivcox_copula_free(bivcox_copula* c) { delete c; }

int bivcox_pickands_one(bivcox_pickands** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_pickands{bivcox::PickandsFunction::one()};
        return BIVCOX_OK;
    });
}

int bivcox_pickands_gumbel(double theta, bivcox_pickands** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_pickands{bivcox::PickandsFunction::gumbel_logistic(theta)};
        return BIVCOX_OK;
    });
}

int bivcox_pickands_asymmetric_logistic(double alpha, double beta, double theta,
                                        bivcox_pickands** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_pickands{
            bivcox::PickandsFunction::asymmetric_logistic(alpha, beta, theta)};
        return BIVCOX_OK;
    });
}

int bivcox_pickands_propagate(const bivcox_pickands* a, const double* alpha_coefs,
                              const double* beta_coefs, size_t coef_len,
                              const double* z, size_t z_len, bivcox_pickands** out) {
    if (int rc = require(a && z && out, "null argument")) return rc;
    return guarded([&] {
        const auto link = make_link(alpha_coefs, beta_coefs, coef_len);
        *out = new bivcox_pickands{
            bivcox::propagate_pickands(a->impl, link, std::span(z, z_len))};
        return BIVCOX_OK;
    });
}

int bivcox_pickands_transition(const bivcox_pickands* b_z, const double* alpha_coefs,
                               const double* beta_coefs, size_t coef_len,
                               const double* z, const double* z_prime, size_t z_len,
                               bivcox_pickands** out) {
    if (int rc = require(b_z && z && z_prime && out, "null argument")) return rc;
    return guarded([&] {
        const auto link = make_link(alpha_coefs, beta_coefs, coef_len);
        *out = new bivcox_pickands{bivcox::transition_pickands(
            b_z->impl, link, std::span(z, z_len), std::span(z_prime, z_len))};
        return BIVCOX_OK;
    });
}

int bivcox_pickands_eval(const bivcox_pickands* a, double s, double* out) {
    if (int rc = require(a && out, "null argument")) return rc;
    return guarded([&] {
        *out = a->impl(s);
        return BIVCOX_OK;
    });
}

void bivcox_pickands_free(bivcox_pickands* a) { delete a; }

int bivcox_verify_copula(const bivcox_copula* c, const char* checks, int resolution,
                         double margin, char** json_out) {
    if (int rc = require(c && json_out, "null argument")) return rc;
    return guarded([&] {
        bivcox::GridSpec grid;
        if (resolution > 0) grid.resolution = resolution;
        if (margin > 0.0) grid.margin = margin;

        std::string list = checks ? checks : "";
        if (list.empty()) list = "axioms,tp2,pqd,min-id";

        nlohmann::json reports = nlohmann::json::array();
        std::size_t pos = 0;
        while (pos <= list.size()) {
            const std::size_t comma = list.find(',', pos);
            const std::string item =
                list.substr(pos, comma == std::string::npos ? std::string::npos
                                                            : comma - pos);
            if (item == "axioms") {
                reports.push_back(bivcox::check_copula_axioms(c->impl, grid).to_json());
            } else if (item == "tp2") {
                reports.push_back(bivcox::check_tp2(c->impl, grid).to_json());
            } else if (item == "pqd") {
                reports.push_back(bivcox::check_pqd(c->impl, grid).to_json());
            } else if (item == "min-id") {
                reports.push_back(
                    bivcox::check_min_id(c->impl, {0.1, 0.5, 2.0}, grid).to_json());
            } else if (!item.empty()) {
                throw std::invalid_argument("unknown check: " + item);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        *json_out = dup_string(reports.dump(2));
        return BIVCOX_OK;
    });
}

int bivcox_verify_pickands(const bivcox_pickands* a, int resolution, char** json_out) {
    if (int rc = require(a && json_out, "null argument")) return rc;
    return guarded([&] {
        const auto report =
            bivcox::check_pickands(a->impl, resolution > 0 ? resolution : 101);
        *json_out = dup_string(report.to_json().dump(2));
        return BIVCOX_OK;
    });
}

int bivcox_rng_new(uint64_t seed, uint64_t stream, bivcox_rng** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&] {
        *out = new bivcox_rng{bivcox::Rng(seed, stream)};
        return BIVCOX_OK;
    });
}

void bivcox_rng_free(bivcox_rng* rng) { delete rng; }

int bivcox_sample_copula(const bivcox_copula* c, size_t n, bivcox_rng* rng, double* u,
                         double* v) {
    if (int rc = require(c && rng && u && v, "null argument")) return rc;
    return guarded([&] {
        const auto pairs = bivcox::sample_copula(c->impl, n, rng->impl);
        std::memcpy(u, pairs.a.data(), n * sizeof(double));
        std::memcpy(v, pairs.b.data(), n * sizeof(double));
        return BIVCOX_OK;
    });
}

int bivcox_sample_positive_stable(double index, size_t n, bivcox_rng* rng,
                                  double* out) {
    if (int rc = require(rng && out, "null argument")) return rc;
    return guarded([&] {
        for (size_t i = 0; i < n; ++i) {
            out[i] = bivcox::sample_positive_stable(index, rng->impl);
        }
        return BIVCOX_OK;
    });
}

int bivcox_sample_gumbel_frailty(double theta, size_t n, bivcox_rng* rng, double* u,
                                 double* v) {
    if (int rc = require(rng && u && v, "null argument")) return rc;
    return guarded([&] {
        const auto pairs = bivcox::sample_gumbel_via_frailty(theta, n, rng->impl);
        std::memcpy(u, pairs.a.data(), n * sizeof(double));
        std::memcpy(v, pairs.b.data(), n * sizeof(double));
        return BIVCOX_OK;
    });
}

int bivcox_sample_khoudraji(const bivcox_copula* c1, const bivcox_copula* c2,
                            double kappa, double eta, size_t n, bivcox_rng* rng,
                            double* u, double* v) {
    if (int rc = require(c1 && c2 && rng && u && v, "null argument")) return rc;
    return guarded([&] {
        const auto pairs =
            bivcox::sample_khoudraji(c1->impl, c2->impl, kappa, eta, n, rng->impl);
        std::memcpy(u, pairs.a.data(), n * sizeof(double));
        std::memcpy(v, pairs.b.data(), n * sizeof(double));
        return BIVCOX_OK;
    });
}

int bivcox_sample_model(const char* family, double theta, double x_shape,
                        double x_scale, double y_shape, double y_scale,
                        const double* alpha_coefs, const double* beta_coefs,
                        size_t coef_len, const double* z, size_t z_len, size_t n,
                        bivcox_rng* rng, double* x, double* y) {
    if (int rc = require(family && z && rng && x && y, "null argument")) return rc;
    return guarded([&] {
        const auto link = make_link(alpha_coefs, beta_coefs, coef_len);
        const bivcox::WeibullSurvival mx{x_shape, x_scale};
        const bivcox::WeibullSurvival my{y_shape, y_scale};
        const auto pairs =
            bivcox::sample_model_m(make_family(family, theta), mx, my, link,
                                   std::span(z, z_len), n, rng->impl);
        std::memcpy(x, pairs.a.data(), n * sizeof(double));
        std::memcpy(y, pairs.b.data(), n * sizeof(double));
        return BIVCOX_OK;
    });
}

int bivcox_kendall_tau(const double* x, const double* y, size_t n, double* out) {
    if (int rc = require(x && y && out, "null argument")) return rc;
    return guarded([&] {
        *out = bivcox::kendall_tau(std::span(x, n), std::span(y, n));
        return BIVCOX_OK;
    });
}

int bivcox_theta_from_tau(const char* family, double tau, double* out) {
    if (int rc = require(family && out, "null argument")) return rc;
    return guarded([&] {
        *out = bivcox::theta_from_tau(bivcox::plugin_family_from_name(family), tau);
        return BIVCOX_OK;
    });
}

int bivcox_spearman_rho_empirical(const double* x, const double* y, size_t n,
                                  double* out) {
    if (int rc = require(x && y && out, "null argument")) return rc;
    return guarded([&] {
        *out = bivcox::spearman_rho_empirical(std::span(x, n), std::span(y, n));
        return BIVCOX_OK;
    });
}

int bivcox_cox_fit(const double* times, const double* covariates, size_t n, size_t d,
                   int max_iter, double tol, double* coefs, int* converged,
                   int* iterations, double* loglik) {
    if (int rc = require(times && covariates && coefs, "null argument")) return rc;
    return guarded([&] {
        const auto fit =
            bivcox::cox_pl_fit(std::span(times, n), std::span(covariates, n * d), d,
                               max_iter > 0 ? max_iter : 50, tol > 0.0 ? tol : 1e-8);
        std::memcpy(coefs, fit.coefficients.data(), d * sizeof(double));
        if (converged) *converged = fit.converged ? 1 : 0;
        if (iterations) *iterations = fit.iterations;
        if (loglik) *loglik = fit.log_likelihood;
        return BIVCOX_OK;
    });
}

int bivcox_mean_relative_error(const bivcox_copula* truth,
                               const bivcox_copula* estimate, const char* scheme,
                               uint64_t mc_seed, double* out) {
    if (int rc = require(truth && estimate && out, "null argument")) return rc;
    return guarded([&] {
        const std::string name = scheme ? scheme : "grid";
        bivcox::MreOptions options;
        if (mc_seed != 0) options.mc_seed = mc_seed;
        bivcox::MreScheme mode;
        if (name == "grid") {
            mode = bivcox::MreScheme::grid_uniform;
        } else if (name == "grid-dc") {
            mode = bivcox::MreScheme::grid;
        } else if (name == "mc") {
            mode = bivcox::MreScheme::monte_carlo;
        } else {
            throw std::invalid_argument("scheme must be 'grid', 'grid-dc' or 'mc'");
        }
        *out = bivcox::mean_relative_error(truth->impl, estimate->impl, mode, options);
        return BIVCOX_OK;
    });
}

int bivcox_experiment_run(const char* config_json, char** report_json_out) {
    if (int rc = require(config_json && report_json_out, "null argument")) return rc;
    return guarded([&] {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(std::string("config parse error: ") + e.what());
        }
        const auto config = bivcox::ExperimentConfig::from_json(parsed);
        const auto report = bivcox::run_experiment(config);
        *report_json_out = dup_string(report.to_json(true).dump(2));
        return BIVCOX_OK;
    });
}

} // extern "C"
