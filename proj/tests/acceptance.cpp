// End-to-end acceptance suite. Runs every criterion at its stated tolerance
// and prints one pass/fail line per criterion. Default is the fast variant
// (100-replication studies); --full runs the table reproductions at their
// published scale (1000 replications) with the tighter tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "bivcox/covariate.hpp"
#include "bivcox/estimation.hpp"
#include "bivcox/experiments.hpp"
#include "bivcox/io.hpp"
#include "bivcox/rng.hpp"
#include "bivcox/sampling.hpp"
#include "bivcox/verify.hpp"

using namespace bivcox;

namespace {

struct Harness {
    bool full = false;
    int only = 0;
    int failures = 0;
    int ran = 0;

    void run(int number, const std::string& title, double budget_seconds,
             const std::function<bool(std::string&)>& body) {
        if (only != 0 && only != number) return;
        ++ran;
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > budget_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over runtime budget");
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %2d: %s (%s%s%.1fs of %.0fs budget)\n",
                    ok ? "PASS" : "FAIL", number, title.c_str(), detail.c_str(),
                    detail.empty() ? "" : "; ", elapsed, budget_seconds);
        std::fflush(stdout);
    }
};

std::string dir_for(const std::string& tag) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bivcox_acceptance" / tag;
    fs::remove_all(dir);
    return dir.string();
}

constexpr std::uint64_t kSeed = 424243;

ExperimentConfig table_config(const std::string& experiment, const std::string& family,
                              const std::string& scheme, std::size_t reps,
                              const std::string& tag) {
    ExperimentConfig c;
    c.experiment = experiment;
    c.baseline_family = family;
    c.theta = 3.0;
    c.alpha_coefs = {0.1, 0.06};
    c.beta_coefs = {0.07, 0.25};
    c.margin_x = {2.0, 12000.0};
    c.margin_y = {1.5, 8000.0};
    c.strata = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    c.sample_sizes = {200, 100, 100};
    c.replications = reps;
    c.seed = kSeed;
    c.has_seed = true;
    c.scheme = scheme;
    c.out_dir = dir_for(tag);
    return c;
}

std::vector<double> stratum_means(const ExperimentReport& r, const char* field) {
    std::vector<double> out;
    for (const auto& s : r.results.at("strata")) {
        out.push_back(s.at(field).at("mean").get<double>() * 100.0);
    }
    return out;
}

bool within(const std::vector<double>& got, const std::vector<double>& want,
            double tol_pp, std::string& detail, const std::string& label) {
    bool ok = true;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s got (%.2f, %.2f, %.2f)%% vs (%.2f, %.2f, %.2f)%%",
                  label.c_str(), got[0], got[1], got[2], want[0], want[1], want[2]);
    detail += (detail.empty() ? "" : "; ") + std::string(buf);
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (std::fabs(got[i] - want[i]) > tol_pp) ok = false;
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    Harness h;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--full") == 0) h.full = true;
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            h.only = std::atoi(argv[i + 1]);
        }
    }
    std::printf("acceptance suite (%s scale)\n", h.full ? "full" : "smoke");

    // 1. closed-form propagation exactness for the gumbel-barnett family
    h.run(1, "gumbel-barnett propagation matches theta/Phi closed form", 1.0,
          [](std::string& detail) {
              const CovariateLink link({std::log(2.0)}, {0.0});
              const std::vector<double> z{1.0};
              const Copula propagated =
                  propagate_copula(Copula::gumbel_barnett(0.5), link, z);
              const Copula target = Copula::gumbel_barnett(0.25);
              double worst = 0.0;
              for (int i = 0; i < 64; ++i) {
                  const double u = 1e-3 + (1.0 - 2e-3) * i / 63.0;
                  for (int j = 0; j < 64; ++j) {
                      const double v = 1e-3 + (1.0 - 2e-3) * j / 63.0;
                      worst = std::max(worst,
                                       std::fabs(propagated.cdf(u, v) - target.cdf(u, v)));
                  }
              }
              char buf[64];
              std::snprintf(buf, sizeof(buf), "max error %.2e", worst);
              detail = buf;
              return worst <= 1e-12;
          });

    // 2. the two propagation formulas and the two dependence-function
    //    formulas agree
    h.run(2, "propagation formula cross-consistency", 5.0, [](std::string& detail) {
        Rng rng(kSeed, 1);
        const CovariateLink link({1.5}, {2.0});
        double worst_copula = 0.0;
        for (int k = 0; k < 100; ++k) {
            const bool clayton = k % 2 == 0;
            const double theta =
                clayton ? 0.3 + 5.0 * rng.uniform01() : 1.0 + 4.0 * rng.uniform01();
            const Copula baseline =
                clayton ? Copula::clayton(theta) : Copula::gumbel(theta);
            const ArchimedeanGenerator g = clayton
                                               ? ArchimedeanGenerator::clayton(theta)
                                               : ArchimedeanGenerator::gumbel(theta);
            const std::vector<double> z{2.0 * rng.uniform01() - 0.5};
            const double u = 0.02 + 0.96 * rng.uniform01();
            const double v = 0.02 + 0.96 * rng.uniform01();
            worst_copula = std::max(
                worst_copula, std::fabs(propagate_copula(baseline, link, z).cdf(u, v) -
                                        propagate_archimedean(g, link, z, u, v)));
        }
        double worst_pickands = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double theta = 1.0 + 5.0 * rng.uniform01();
            const std::vector<double> z{1.2 * rng.uniform01() - 0.2};
            const PickandsFunction lhs =
                propagate_pickands(PickandsFunction::gumbel_logistic(theta), link, z);
            const PickandsFunction rhs =
                asymmetric_logistic_pickands(link.alpha(z), link.beta(z), theta);
            for (int i = 0; i <= 100; ++i) {
                const double s = i / 100.0;
                worst_pickands = std::max(worst_pickands, std::fabs(lhs(s) - rhs(s)));
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "copula %.2e, pickands %.2e", worst_copula,
                      worst_pickands);
        detail = buf;
        return worst_copula <= 1e-10 && worst_pickands <= 1e-12;
    });

    // 3. transition between covariate levels matches direct propagation
    h.run(3, "transition two-path consistency", 5.0, [](std::string& detail) {
        Rng rng(kSeed, 2);
        const CovariateLink link({1.5}, {2.0});
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double theta = 1.0 + 6.0 * rng.uniform01();
            const PickandsFunction a = PickandsFunction::gumbel_logistic(theta);
            const std::vector<double> z{1.5 * rng.uniform01() - 0.25};
            const std::vector<double> zp{1.5 * rng.uniform01() - 0.25};
            const PickandsFunction direct = propagate_pickands(a, link, zp);
            const PickandsFunction via =
                transition_pickands(propagate_pickands(a, link, z), link, z, zp);
            for (int i = 0; i <= 100; ++i) {
                const double s = i / 100.0;
                worst = std::max(worst, std::fabs(direct(s) - via(s)));
            }
        }
        char buf[48];
        std::snprintf(buf, sizeof(buf), "max gap %.2e", worst);
        detail = buf;
        return worst <= 1e-10;
    });

    // 4. propagated dependence functions satisfy the Pickands conditions
    h.run(4, "validity of 1000 propagated dependence functions", 10.0,
          [](std::string& detail) {
              Rng rng(kSeed, 3);
              const CovariateLink link({1.5}, {2.0});
              int passed = 0;
              for (int k = 0; k < 1000; ++k) {
                  const double theta = 1.0 + 7.0 * rng.uniform01();
                  PickandsFunction base =
                      k % 3 == 2 ? PickandsFunction::asymmetric_logistic(
                                       0.1 + 0.9 * rng.uniform01(),
                                       0.1 + 0.9 * rng.uniform01(), theta)
                                 : PickandsFunction::gumbel_logistic(theta);
                  const std::vector<double> z{2.5 * rng.uniform01() - 0.5};
                  if (check_pickands(propagate_pickands(base, link, z)).pass) ++passed;
              }
              detail = std::to_string(passed) + "/1000 valid";
              return passed == 1000;
          });

    // 5. dependence-class checks across the family matrix
    h.run(5, "TP2 / PQD / min-id classification", 10.0, [](std::string& detail) {
        bool ok = check_tp2(Copula::clayton(3.0)).pass;
        ok = ok && check_tp2(Copula::gumbel(3.0)).pass;
        ok = ok && check_pqd(Copula::clayton(3.0)).pass;
        ok = ok && check_pqd(Copula::gumbel(3.0)).pass;
        const auto gb = check_tp2(Copula::gumbel_barnett(0.5));
        ok = ok && !gb.pass && !gb.witness.empty();

        const Copula matrix[] = {
            Copula::product(),       Copula::clayton(0.5),  Copula::clayton(3.0),
            Copula::gumbel(1.5),     Copula::gumbel(3.0),   Copula::amh(0.3),
            Copula::amh(0.9),        Copula::gumbel_barnett(0.2),
            Copula::gumbel_barnett(0.5),
        };
        for (const auto& c : matrix) {
            if (check_tp2(c).pass && !check_pqd(c).pass) ok = false;
            if (check_tp2(c).pass != check_min_id(c, {0.1, 0.5, 2.0}).pass) ok = false;
        }
        detail = "gumbel-barnett witness at (" + format_double(gb.witness[0]) + ", " +
                 format_double(gb.witness[1]) + ")";
        return ok;
    });

    // 6. propagated extreme-value copulas stay max-stable
    h.run(6, "max-stability of propagated evc", 2.0, [](std::string& detail) {
        Rng rng(kSeed, 4);
        const CovariateLink link({1.5}, {2.0});
        double worst = 0.0;
        for (int k = 0; k < 500; ++k) {
            const double theta = 1.0 + 5.0 * rng.uniform01();
            const std::vector<double> z{1.5 * rng.uniform01() - 0.25};
            const Copula cz = propagate_copula(
                Copula::extreme_value(PickandsFunction::gumbel_logistic(theta)), link, z);
            const double u = 0.05 + 0.9 * rng.uniform01();
            const double v = 0.05 + 0.9 * rng.uniform01();
            const double t = 0.01 + 9.99 * rng.uniform01();
            worst = std::max(worst, std::fabs(cz.cdf(std::pow(u, t), std::pow(v, t)) -
                                              std::pow(cz.cdf(u, v), t)));
        }
        char buf[48];
        std::snprintf(buf, sizeof(buf), "max gap %.2e", worst);
        detail = buf;
        return worst <= 1e-12;
    });

    // 7. reproduction of the published stratified relative errors
    {
        const std::size_t reps = h.full ? 1000 : 100;
        const double tol = h.full ? 0.5 : 1.5;
        const double budget = h.full ? 1800.0 : 180.0;
        h.run(7, "stratified relative-error table reproduction", budget,
              [&](std::string& detail) {
                  // the two published rows come from different quadratures:
                  // the clayton row matches the dC-weighted grid, the gumbel
                  // row the plain grid average (see README reproduction notes)
                  auto clay = table_config("case-study", "clayton", "grid-dc", reps,
                                           "table1_clayton");
                  auto gumb =
                      table_config("case-study", "gumbel", "grid", reps, "table1_gumbel");
                  const auto rc = run_case_study(clay);
                  const auto rg = run_case_study(gumb);
                  bool ok = within(stratum_means(rc, "relative_error"),
                                   {0.93, 2.03, 2.60}, tol, detail, "clayton[grid-dc]");
                  ok = within(stratum_means(rg, "relative_error"), {0.81, 1.55, 2.02},
                              tol, detail, "gumbel[grid]") &&
                       ok;
                  return ok;
              });
    }

    // 8. reproduction of the published misspecification errors
    {
        const std::size_t reps = h.full ? 1000 : 100;
        const double budget = h.full ? 1800.0 : 180.0;
        h.run(8, "misspecification table reproduction", budget,
              [&](std::string& detail) {
                  auto cfg =
                      table_config("misspec", "clayton", "grid", reps, "table3_misspec");
                  cfg.misspec_family = "amh";
                  cfg.link_mode = "estimated";
                  const auto r = run_misspecification(cfg);
                  bool ok = within(stratum_means(r, "relative_error"),
                                   {17.38, 17.61, 14.72}, 2.0, detail, "copula[grid]");
                  ok = within(stratum_means(r, "spearman_relative_error"),
                              {53.39, 54.85, 55.29}, 4.0, detail, "spearman") &&
                       ok;
                  return ok;
              });
    }

    // 9. sampler fidelity against the family tau values
    h.run(9, "sampler fidelity", 30.0, [](std::string& detail) {
        Rng r1(kSeed, 5);
        const double tau_clay =
            kendall_tau(sample_copula(Copula::clayton(3.0), 10000, r1));
        Rng r2(kSeed, 6);
        const double tau_gumb =
            kendall_tau(sample_copula(Copula::gumbel(3.0), 10000, r2));
        Rng r3(kSeed, 7);
        const double tau_frail = kendall_tau(sample_gumbel_via_frailty(3.0, 10000, r3));

        Rng r4(kSeed, 8);
        const std::size_t n = 20000;
        const auto kh =
            sample_khoudraji(Copula::product(), Copula::gumbel(3.0), 0.7, 0.7, n, r4);
        const Copula closed =
            Copula::extended_archimedean(ArchimedeanGenerator::gumbel(3.0), 0.7, 0.7);
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i) {
            for (int j = 1; j <= 10; ++j) {
                const double a = i / 10.0, b = j / 10.0;
                std::size_t count = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (kh.a[k] <= a && kh.b[k] <= b) ++count;
                }
                worst = std::max(worst, std::fabs(static_cast<double>(count) / n -
                                                  closed.cdf(a, b)));
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "tau clay %.3f gumb %.3f frailty %.3f, khoudraji dev %.4f",
                      tau_clay, tau_gumb, tau_frail, worst);
        detail = buf;
        return std::fabs(tau_clay - 0.6) <= 0.03 &&
               std::fabs(tau_gumb - 2.0 / 3.0) <= 0.03 &&
               std::fabs(tau_frail - 2.0 / 3.0) <= 0.03 &&
               worst <= 2.0 / std::sqrt(static_cast<double>(n));
    });

    // 10. Cox partial-likelihood recovery at two sample sizes
    h.run(10, "Cox partial-likelihood recovery", 30.0, [](std::string& detail) {
        auto fit_binary = [](std::size_t n, std::uint64_t stream) {
            Rng rng(kSeed, stream);
            std::vector<double> z(n), t(n);
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = i % 2 == 0 ? 0.0 : 1.0;
                t[i] = -std::log(rng.uniform_open()) / std::exp(0.5 * z[i]);
            }
            return cox_pl_fit(t, z, 1);
        };
        const FitResult f5 = fit_binary(5000, 9);
        const FitResult f50 = fit_binary(50000, 10);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "n=5000: %.4f, n=50000: %.4f",
                      f5.coefficients[0], f50.coefficients[0]);
        detail = buf;
        return f5.converged && std::fabs(f5.coefficients[0] - 0.5) <= 0.1 &&
               f50.converged && std::fabs(f50.coefficients[0] - 0.5) <= 0.035;
    });

    // 11. qualitative behaviour of the figure data
    h.run(11, "figure-data qualitative checks", 60.0, [](std::string& detail) {
        const CovariateLink link({1.5}, {2.0});
        const PickandsFunction a0 = PickandsFunction::gumbel_logistic(3.0);
        // dependence functions move pointwise toward 1 as z grows
        const double zs[] = {0.0, 0.25, 0.5, 1.0, 3.0};
        bool ordered = true;
        for (std::size_t k = 0; k + 1 < 5; ++k) {
            const std::vector<double> za{zs[k]}, zb{zs[k + 1]};
            const PickandsFunction ba = propagate_pickands(a0, link, za);
            const PickandsFunction bb = propagate_pickands(a0, link, zb);
            for (int i = 0; i <= 100; ++i) {
                const double s = i / 100.0;
                if (bb(s) < ba(s) - 1e-12 || bb(s) > 1.0 + 1e-12) ordered = false;
            }
        }

        // the propagated clayton density flattens to 1 at large z; checked
        // densely over the interior-grid extent [0.05, 0.95]^2 (the corner
        // singularity of any fixed-z copula lives outside it)
        const std::vector<double> z3{3.0};
        const Copula cz =
            propagate_archimedean_copula(ArchimedeanGenerator::clayton(3.0), link, z3);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double u = 0.05 + 0.9 * i / 100.0;
            for (int j = 0; j <= 100; ++j) {
                const double v = 0.05 + 0.9 * j / 100.0;
                worst = std::max(worst, std::fabs(cz.density(u, v) - 1.0));
            }
        }
        char buf[112];
        std::snprintf(buf, sizeof(buf),
                      "curves ordered: %s, max |density-1| %.4f on [0.05,0.95]^2",
                      ordered ? "yes" : "no", worst);
        detail = buf;
        return ordered && worst <= 0.05;
    });

    std::printf("%d/%d criteria passed\n", h.ran - h.failures, h.ran);
    return h.failures == 0 ? 0 : 1;
}
