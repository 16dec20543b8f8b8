#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bivcox/copula.hpp"
#include "bivcox/generator.hpp"
#include "bivcox/pickands.hpp"

namespace bivcox {

// Interior evaluation grid. `resolution` points per axis spanning
// [margin, 1 - margin]; the margin keeps clear of boundary singularities.
struct GridSpec {
    int resolution = 64;
    double margin = 1e-3;

    std::vector<double> points() const;
    void validate() const;
};

// Outcome of one grid check. These are necessary-condition certificates:
// a pass means no violation was found at the given resolution, nothing more.
struct VerificationReport {
    std::string property;
    bool pass = true;
    double worst_violation = 0.0;    // magnitude of the worst violation, 0 if none
    std::vector<double> witness;     // coordinates of the worst violation
    std::string detail;              // which sub-check produced the worst value
    int resolution = 0;

    nlohmann::json to_json() const;
};

// uniform margins, groundedness and the rectangle inequality on all grid cells
VerificationReport check_copula_axioms(const Copula& c, const GridSpec& grid = {});

// 2x2 determinants C(u1,v1)C(u2,v2) - C(u1,v2)C(u2,v1) >= 0 over adjacent
// grid cells (cell-level TP2 implies TP2 for every ordered rectangle of the
// grid when values are positive)
VerificationReport check_tp2(const Copula& c, const GridSpec& grid = {});

// secondary criterion: dC/du dC/dv <= d2C/dudv * C by central differences
VerificationReport check_tp2_differential(const Copula& c, const GridSpec& grid = {},
                                          double step = 1e-4);

// C(u,v) >= uv at all grid points
VerificationReport check_pqd(const Copula& c, const GridSpec& grid = {});

// endpoint values, Pickands bounds and convexity of a dependence function
VerificationReport check_pickands(const PickandsFunction& a, int resolution = 101);

// rectangle inequality of C^gamma for each gamma; equivalent to TP2 of C
// when it holds for all positive powers
VerificationReport check_min_id(const Copula& c, const std::vector<double>& gammas,
                                const GridSpec& grid = {});

// phi(1) = 0, strict decrease and convexity of a generator on (0, 1]
VerificationReport check_generator(const ArchimedeanGenerator& g, int resolution = 101);

} // namespace bivcox
