#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bivcox/covariate.hpp"
#include "bivcox/rng.hpp"
#include "bivcox/verify.hpp"

using namespace bivcox;

namespace {

const Copula kCountermonotone = Copula::custom(
    "countermonotone", [](double u, double v) { return std::max(u + v - 1.0, 0.0); });

// fails groundedness: C(u,0) = u - 1 != 0
const Copula kAffineShift =
    Copula::custom("affine-shift", [](double u, double v) { return u + v - 1.0; });

} // namespace

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((GridSpec{2, 1e-3}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{16, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{16, 0.5}).validate(), std::invalid_argument);
    const auto pts = GridSpec{5, 0.1}.points();
    CHECK(pts.front() == doctest::Approx(0.1));
    CHECK(pts.back() == doctest::Approx(0.9));
    CHECK(pts.size() == 5);
}

TEST_CASE("copula axioms check") {
    const auto product = check_copula_axioms(Copula::product());
    CHECK(product.pass);
    CHECK(product.worst_violation == 0.0);

    CHECK(check_copula_axioms(Copula::clayton(3.0)).pass);

    const auto bad = check_copula_axioms(kAffineShift);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.witness.empty());
    CHECK(bad.worst_violation > 0.1);
}

TEST_CASE("tp2 check") {
    const auto gb = check_tp2(Copula::gumbel_barnett(0.5));
    CHECK_FALSE(gb.pass);
    CHECK_FALSE(gb.witness.empty());
    CHECK(gb.worst_violation > 1e-5);
    // witness rectangle is ordered and inside the unit square
    REQUIRE(gb.witness.size() == 4);
    CHECK(gb.witness[0] < gb.witness[2]);
    CHECK(gb.witness[1] < gb.witness[3]);

    CHECK(check_tp2(Copula::clayton(3.0)).pass);

    const auto prod = check_tp2(Copula::product());
    CHECK(prod.pass);
    CHECK(prod.worst_violation <= 1e-10); // determinants are zero up to noise
}

TEST_CASE("differential tp2 criterion agrees with the determinant check") {
    const GridSpec grid{24, 5e-3};
    CHECK(check_tp2_differential(Copula::clayton(3.0), grid).pass);
    CHECK(check_tp2_differential(Copula::product(), grid).pass);
    CHECK_FALSE(check_tp2_differential(Copula::gumbel_barnett(0.5), grid).pass);
}

TEST_CASE("pqd check") {
    CHECK(check_pqd(Copula::product()).pass);
    CHECK(check_pqd(Copula::gumbel(3.0)).pass);

    const auto counter = check_pqd(kCountermonotone);
    CHECK_FALSE(counter.pass);
    CHECK(counter.worst_violation > 0.2);
}

TEST_CASE("pickands checks") {
    CHECK(check_pickands(PickandsFunction::one()).pass);

    // comonotone lower envelope max(t, 1-t)
    const PickandsFunction envelope = PickandsFunction::derived(
        "envelope", [](double t) { return std::max(t, 1.0 - t); });
    CHECK(check_pickands(envelope).pass);

    const PickandsFunction low =
        PickandsFunction::derived("low", [](double) { return 0.4; });
    const auto bad = check_pickands(low);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_violation > 0.1);

    // concave bump violates convexity only
    const PickandsFunction bump = PickandsFunction::derived("bump", [](double t) {
        return std::min(1.0, std::max(t, 1.0 - t) + 0.02 * std::sin(M_PI * t));
    });
    CHECK_FALSE(check_pickands(bump).pass);

    CHECK(check_pickands(PickandsFunction::gumbel_logistic(3.0)).pass);
    CHECK(check_pickands(PickandsFunction::asymmetric_logistic(0.4, 0.9, 2.0)).pass);
}

TEST_CASE("pickands checks at random parameters") {
    Rng rng(5501, 0);
    for (int k = 0; k < 300; ++k) {
        const double theta = 1.0 + 9.0 * rng.uniform01();
        const double a = 0.05 + 0.95 * rng.uniform01();
        const double b = 0.05 + 0.95 * rng.uniform01();
        CHECK(check_pickands(PickandsFunction::gumbel_logistic(theta)).pass);
        CHECK(check_pickands(PickandsFunction::asymmetric_logistic(a, b, theta)).pass);
    }
}

TEST_CASE("min-id check") {
    const std::vector<double> gammas{0.1, 0.5, 2.0};
    CHECK(check_min_id(Copula::clayton(3.0), gammas).pass);
    CHECK(check_min_id(Copula::product(), gammas).pass);

    const auto gb = check_min_id(Copula::gumbel_barnett(0.5), {0.1});
    CHECK_FALSE(gb.pass);
    REQUIRE(gb.witness.size() == 5); // gamma plus the rectangle corners
    CHECK(gb.witness[0] == 0.1);

    CHECK_THROWS_AS(check_min_id(Copula::product(), {}), std::invalid_argument);
    CHECK_THROWS_AS(check_min_id(Copula::product(), {-1.0}), std::domain_error);
}

TEST_CASE("tp2 implies pqd and matches min-id across the family matrix") {
    const std::vector<double> gammas{0.1, 0.5, 2.0};
    const Copula matrix[] = {
        Copula::product(),
        Copula::clayton(0.5),
        Copula::clayton(3.0),
        Copula::gumbel(1.5),
        Copula::gumbel(3.0),
        Copula::amh(0.3),
        Copula::amh(0.9),
        Copula::gumbel_barnett(0.2),
        Copula::gumbel_barnett(0.5),
        Copula::gumbel_barnett(1.0),
        Copula::extreme_value(PickandsFunction::asymmetric_logistic(0.6, 0.9, 2.5)),
        kCountermonotone,
    };
    for (const auto& c : matrix) {
        const bool tp2 = check_tp2(c).pass;
        const bool pqd = check_pqd(c).pass;
        const bool minid = check_min_id(c, gammas).pass;
        if (tp2) CHECK(pqd);
        CHECK(tp2 == minid);
        // the family knowledge built into the copula agrees with the grid
        if (const auto known = c.known_tp2(); known.has_value()) {
            CHECK(*known == tp2);
        }
    }
}

TEST_CASE("reports are deterministic and serializable") {
    const auto r1 = check_tp2(Copula::gumbel_barnett(0.5));
    const auto r2 = check_tp2(Copula::gumbel_barnett(0.5));
    CHECK(r1.to_json() == r2.to_json());
    CHECK(r1.to_json().contains("property"));
    CHECK(r1.to_json()["pass"] == false);

    // pass reports say what was scanned, not "verified"
    const auto ok = check_pqd(Copula::product());
    CHECK(ok.to_json()["detail"].get<std::string>().find("resolution") !=
          std::string::npos);
}

TEST_CASE("propagated dependence functions pass the pickands suite in bulk") {
    Rng rng(5502, 0);
    const CovariateLink link = CovariateLink({1.5}, {2.0});
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        const double theta = 1.0 + 7.0 * rng.uniform01();
        const std::vector<double> z{2.5 * rng.uniform01() - 0.5};
        PickandsFunction base = k % 3 == 2
                                    ? PickandsFunction::asymmetric_logistic(
                                          0.1 + 0.9 * rng.uniform01(),
                                          0.1 + 0.9 * rng.uniform01(), theta)
                                    : PickandsFunction::gumbel_logistic(theta);
        const PickandsFunction b = propagate_pickands(base, link, z);
        if (check_pickands(b).pass) ++checked;
    }
    CHECK(checked == 1000);
}
