#include "tropcrit/polytope.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace tropcrit {

namespace {

bool lex_less(const QVec& a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// next k-combination of indices in [0, m)
bool next_comb(std::vector<size_t>& c, size_t m) {
    size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
        if (c[i] + (k - i) < m) {
            ++c[i];
            for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

Polytope::Polytope(int n, std::vector<Facet> facets) : n_(n), facets_(std::move(facets)) {
    if (n_ < 1) throw invalid_polytope("dimension must be >= 1");
    for (const auto& f : facets_) {
        if (static_cast<int>(f.v.size()) != n_) throw dimension_mismatch("facet normal length");
        bool zero = std::all_of(f.v.begin(), f.v.end(), [](const Int& x) { return x == 0; });
        if (zero) throw invalid_polytope("zero facet normal");
    }
    if (n_ <= 3) validate();
}

Rational Polytope::facet_value(size_t i, const QVec& u) const {
    if (i >= facets_.size()) throw index_out_of_range("facet index");
    if (u.size() != static_cast<size_t>(n_)) throw dimension_mismatch("point dimension");
    Rational s = -facets_[i].lambda;
    for (int j = 0; j < n_; ++j) s += Rational(facets_[i].v[j]) * u[j];
    return s;
}

bool Polytope::contains(const QVec& u, bool strict) const {
    for (size_t i = 0; i < facets_.size(); ++i) {
        Rational lv = facet_value(i, u);
        if (strict ? !(lv > 0) : lv < 0) return false;
    }
    return true;
}

const std::vector<QVec>& Polytope::vertices() const {
    if (!verts_valid_) throw unsupported_dimension("vertex enumeration implemented for n <= 3");
    return verts_;
}

void Polytope::validate() {
    size_t m = facets_.size();
    size_t n = static_cast<size_t>(n_);
    if (m < n + 1) throw invalid_polytope("too few facets to bound a polytope");

    // rank of the normal matrix; rank < n means an invariant line escapes
    QMat normals;
    for (const auto& f : facets_) {
        QVec row;
        for (const auto& x : f.v) row.emplace_back(x);
        normals.push_back(std::move(row));
    }
    if (qrank(normals, n) != n) throw invalid_polytope("unbounded: normals do not span");

    // recession ray check: a nonzero d with <d, v_i> >= 0 for all i
    auto escapes = [&](const QVec& d) {
        bool nonzero = false;
        for (const auto& x : d) nonzero = nonzero || x != 0;
        if (!nonzero) return false;
        for (size_t i = 0; i < m; ++i)
            if (dot(normals[i], d) < 0) return false;
        return true;
    };
    if (n == 1) {
        if (escapes({Rational(1)}) || escapes({Rational(-1)}))
            throw invalid_polytope("unbounded");
    } else {
        std::vector<size_t> comb(n - 1);
        for (size_t i = 0; i < n - 1; ++i) comb[i] = i;
        do {
            QMat sub;
            for (size_t i : comb) sub.push_back(normals[i]);
            QMat ker = nullspace(sub, n);
            if (ker.size() != 1) continue;
            QVec d = ker[0];
            QVec dn(d.size());
            for (size_t i = 0; i < d.size(); ++i) dn[i] = -d[i];
            if (escapes(d) || escapes(dn)) throw invalid_polytope("unbounded");
        } while (next_comb(comb, m));
    }

    // vertices: feasible intersections of n facets
    std::vector<size_t> comb(n);
    for (size_t i = 0; i < n; ++i) comb[i] = i;
    do {
        QMat a;
        QVec b;
        for (size_t i : comb) {
            a.push_back(normals[i]);
            b.push_back(facets_[i].lambda);
        }
        auto u = solve_square(std::move(a), std::move(b));
        if (!u || !contains(*u, false)) continue;
        bool dup = false;
        for (const auto& w : verts_) dup = dup || w == *u;
        if (!dup) verts_.push_back(*u);
    } while (next_comb(comb, m));
    std::sort(verts_.begin(), verts_.end(), lex_less);
    verts_valid_ = true;
    if (verts_.empty()) throw invalid_polytope("empty polytope");

    // centroid of the vertices is interior iff the polytope is full-dimensional
    QVec c(n, Rational(0));
    for (const auto& v : verts_)
        for (size_t j = 0; j < n; ++j) c[j] += v[j];
    for (auto& x : c) x /= Rational(Int(verts_.size()));
    if (!contains(c, true)) throw invalid_polytope("empty interior");

    // reject positively proportional facet pairs (same halfspace listed twice)
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            QVec a = normals[i], b = normals[j];
            a.push_back(facets_[i].lambda);
            b.push_back(facets_[j].lambda);
            QMat pair{a, b};
            bool same_dir = dot(normals[i], normals[j]) > 0;
            if (qrank(pair, n + 1) == 1 && same_dir)
                throw invalid_polytope("duplicate facet");
        }

    // each facet must be tight on an (n-1)-dimensional set of vertices
    for (size_t i = 0; i < m; ++i) {
        QMat tight;
        for (const auto& v : verts_)
            if (facet_value(i, v) == 0) tight.push_back(v);
        if (tight.empty()) throw invalid_polytope("redundant facet (never tight)");
        QMat diffs;
        for (size_t t = 1; t < tight.size(); ++t) {
            QVec d(n);
            for (size_t j = 0; j < n; ++j) d[j] = tight[t][j] - tight[0][j];
            diffs.push_back(std::move(d));
        }
        if (qrank(diffs, n) != n - 1) throw invalid_polytope("redundant facet");
    }
}

bool Polytope::delzant() const {
    const auto& vs = vertices();
    size_t n = static_cast<size_t>(n_);
    for (const auto& v : vs) {
        std::vector<size_t> tight;
        for (size_t i = 0; i < facets_.size(); ++i)
            if (facet_value(i, v) == 0) tight.push_back(i);
        if (tight.size() != n) return false;
        IntMat mat;
        for (size_t i : tight) mat.push_back(facets_[i].v);
        Int d = det(mat);
        if (d != 1 && d != -1) return false;
    }
    return true;
}

nlohmann::json Polytope::to_json() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : facets_) {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& x : f.v) v.push_back(x.str());
        fs.push_back({{"v", v}, {"lambda", rational_to_string(f.lambda)}});
    }
    return {{"dim", n_}, {"facets", fs}};
}

Polytope Polytope::from_json(const nlohmann::json& j) {
    try {
        int n = j.at("dim").get<int>();
        std::vector<Facet> fs;
        for (const auto& jf : j.at("facets")) {
            Facet f;
            for (const auto& x : jf.at("v")) {
                if (x.is_string()) f.v.emplace_back(x.get<std::string>());
                else f.v.emplace_back(x.get<long long>());
            }
            const auto& l = jf.at("lambda");
            f.lambda = l.is_string() ? parse_rational(l.get<std::string>())
                                     : Rational(l.get<long long>());
            fs.push_back(std::move(f));
        }
        return Polytope(n, std::move(fs));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad polytope json: ") + e.what());
    }
}

} // namespace tropcrit
