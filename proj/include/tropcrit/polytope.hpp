#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/lattice.hpp"
#include "tropcrit/qlinalg.hpp"

namespace tropcrit {

struct Facet {
    std::vector<Int> v; // integer inward normal
    Rational lambda;    // face { u : <u,v> = lambda }
};

// H-representation of a moment polytope: { u : <u, v_i> - lambda_i >= 0 }.
// The constructor checks (for n <= 3) that the polytope is bounded, has
// nonempty interior, and carries no redundant facet; violations throw
// invalid_polytope at construction time.
class Polytope {
public:
    Polytope(int n, std::vector<Facet> facets);

    int dim() const { return n_; }
    const std::vector<Facet>& facets() const { return facets_; }

    // l_i(u) = <u, v_i> - lambda_i, exact
    Rational facet_value(size_t i, const QVec& u) const;
    bool contains(const QVec& u, bool strict) const;

    // lexicographically sorted vertex list; unsupported_dimension for n > 3
    const std::vector<QVec>& vertices() const;

    // every vertex lies on exactly n facets whose normals form a Z-basis
    bool delzant() const;

    nlohmann::json to_json() const;
    static Polytope from_json(const nlohmann::json& j);

private:
    int n_;
    std::vector<Facet> facets_;
    std::vector<QVec> verts_;
    bool verts_valid_ = false;
    void validate();
};

} // namespace tropcrit
