#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/potential.hpp"

namespace tropcrit {

struct TropTerm {
    Expo c;
    Rational w; // valuation of the coefficient
};

struct TropPoly {
    int n = 0;
    std::vector<TropTerm> terms;
};

TropPoly tropicalize(const LaurentPoly& f); // zero_polynomial on the zero poly

Rational trop_value(const TropPoly& tp, const QVec& u); // min_i (w_i + <u, c_i>)
std::vector<size_t> argmin_terms(const TropPoly& tp, const QVec& u);
bool is_on_variety(const TropPoly& tp, const QVec& u); // min attained >= twice

// affine form <a, u> + b
struct AffForm {
    QVec a;
    Rational b;
};
Rational aff_eval(const AffForm& f, const QVec& u);

struct Ineq {
    AffForm f;
    bool strict = false;
};

// Relatively open/half-open polyhedral cell in canonical form: equalities are
// the primitive-integer RREF of the affine hull, inequalities are facet
// supports of the closure (strict where the face is excluded) plus any strict
// forms touching lower-dimensional faces. Closure vertices ride along for
// rendering and sampling.
struct Cell {
    int n = 0;
    int dim = -1;
    std::vector<AffForm> eq;
    std::vector<Ineq> ineq;
    std::vector<QVec> verts;          // closure vertices, lex sorted
    std::vector<bool> vert_excluded;  // strict constraint vanishes there

    bool contains(const QVec& u) const;
    nlohmann::json to_json() const;
    std::string key() const;
};

// Canonicalize an arbitrary constraint list. Assumes the closed solution set
// is bounded (callers always clip by a polytope). Returns nullopt when empty.
// Supported for n <= 3.
std::optional<Cell> make_cell(int n, const std::vector<AffForm>& eqs,
                              const std::vector<Ineq>& ineqs);

std::optional<Cell> intersect_cells(const Cell& a, const Cell& b);

struct PolyhedralComplex {
    int n = 0;
    bool exact = true;
    std::vector<Cell> cells;

    int dim() const; // max cell dimension, -1 when empty
    nlohmann::json to_json() const;
};

// Dedupe, drop cells contained in another, then add pairwise intersections of
// the maximal cells (multi-way tie points appear as these lower cells).
void normalize_complex(PolyhedralComplex& pc);

// Pairwise tie cells { w_k + <u,c_k> = w_l + <u,c_l> <= all others } clipped
// by the polytope (open = strict interior).
PolyhedralComplex hypersurface_cells(const TropPoly& tp, const Polytope& clip, bool open_clip);

// Pairwise intersections folded across the complexes. For more than one input
// this is an outer approximation of the common tropicalization (exact=false).
PolyhedralComplex intersect_complexes(const std::vector<PolyhedralComplex>& cs);

// critical_system -> tropicalize -> hypersurface_cells (open clip) -> intersect
PolyhedralComplex crit_trop(const Polytope& p, const SubtorusSpec& s, const LaurentPoly& po);
PolyhedralComplex crit_trop(const Polytope& p, const SubtorusSpec& s);

} // namespace tropcrit
