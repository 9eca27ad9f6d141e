#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/tropical.hpp"

namespace tropcrit {

// valuation-zero layer of f after the substitution y = T^u z: the complex
// polynomial whose roots seed the lifting iteration
struct CPoly {
    int n = 0;
    std::map<Expo, std::complex<double>, GradedLexDesc> terms;
};

CPoly initial_form(const LaurentPoly& f, const QVec& u);

enum class LiftStatus { ok, singular_jacobian, no_root, stalled };
const char* lift_status_name(LiftStatus s);

struct LiftReport {
    LiftStatus status = LiftStatus::no_root;
    QVec u;
    std::vector<int> free_coords;
    std::vector<NovikovSeries> z; // valuation-zero coordinates of the lift
    std::vector<NovikovSeries> y; // y_j = T^{u_j} z_j
    // certified residual order after each step (∞ = exact zero): below this
    // exponent every residual coefficient is either absent or indistinguishable
    // from zero at working precision (complex magnitude under the noise floor
    // set by the system, coordinate, and degree scales)
    std::vector<ExtRat> residual_vals;
    Rational order = 0;

    nlohmann::json to_json() const;
};

// Newton iteration over the series field on the dependent coordinates,
// starting from a residue-system root. Residual order doubles per step while
// the dependent Jacobian stays invertible at valuation zero.
LiftReport newton_lift(const std::vector<LaurentPoly>& sys, const QVec& u,
                       const std::vector<std::complex<double>>& seed,
                       const std::vector<int>& free_coords, const Rational& order);

struct SeedResult {
    std::vector<int> free_coords;
    std::vector<std::vector<std::complex<double>>> seeds;
};

// roots of the residue system in the small torus: free coordinates (first
// choice that works, tried in lexicographic order) take random values from
// rng, dependent ones solve the square complex system
SeedResult find_seeds(const std::vector<LaurentPoly>& sys, const QVec& u, std::mt19937_64& rng);

// random rational point of the relative interior: positive random weights
// over the closure vertices keep every strict form strictly positive
QVec sample_point(const Cell& c, std::mt19937_64& rng);

struct CellProbe {
    int dim = -1;
    int samples = 0;
    int seeds_found = 0;
    int lifts_ok = 0;         // full-order lifts over all seeds
    int ok_samples = 0;       // samples with at least one full-order lift
    int singular_samples = 0; // samples whose only explanation is a singular Jacobian
    bool verified = false;    // some sample produced a full-order lift
};

struct ProbeReport {
    int probed_dim = -1; // max dimension among verified cells
    int spurious = 0;    // cells that never lifted (outer-approximation artifacts)
    std::vector<CellProbe> cells;

    nlohmann::json to_json() const;
};

// samples every cell of the complex and lift-checks the samples; the probe
// dimension is certified by genuine lifts, not by the cell list alone
ProbeReport dimension_probe(const std::vector<LaurentPoly>& sys, const PolyhedralComplex& pc,
                            int samples, const Rational& order, std::uint64_t seed);

} // namespace tropcrit
