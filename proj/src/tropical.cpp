#include "tropcrit/tropical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "tropcrit/errors.hpp"

namespace tropcrit {

namespace {

// scale by a positive rational to coprime integers; keeps orientation, so it
// is safe for inequality forms (primitive_integer may flip the sign)
QVec primitive_pos(QVec v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int l = 1;
    for (const Rational& x : v) l = lcm(l, denominator(x));
    Int g = 0;
    for (Rational& x : v) {
        x *= l;
        g = gcd(g, numerator(x));
    }
    if (g == 0) return v;
    for (Rational& x : v) x /= g;
    return v;
}

template <typename F>
void for_subsets(size_t m, size_t k, F&& f) {
    if (k > m) return;
    std::vector<size_t> idx(k);
    std::iota(idx.begin(), idx.end(), size_t{0});
    while (true) {
        f(idx);
        // advance to the next k-subset in lexicographic order
        size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

size_t affine_dim(const QMat& pts) {
    if (pts.empty()) return 0;
    QMat diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        QVec d = pts[i];
        for (size_t j = 0; j < d.size(); ++j) d[j] -= pts[0][j];
        diffs.push_back(std::move(d));
    }
    if (diffs.empty()) return 0;
    return qrank(diffs, pts[0].size());
}

// u = p + basis^T t, the solution set of the given equalities
struct AffSpace {
    QVec p;
    QMat basis;
};

std::optional<AffSpace> solve_affine(int n, const std::vector<AffForm>& eqs) {
    QMat m;
    for (const AffForm& e : eqs) {
        QVec row = e.a;
        row.push_back(-e.b);
        m.push_back(std::move(row));
    }
    std::vector<size_t> piv = rref(m, static_cast<size_t>(n));
    for (size_t r = piv.size(); r < m.size(); ++r)
        if (m[r][static_cast<size_t>(n)] != 0) return std::nullopt;

    AffSpace sp;
    sp.p.assign(static_cast<size_t>(n), Rational(0));
    for (size_t k = 0; k < piv.size(); ++k) sp.p[piv[k]] = m[k][static_cast<size_t>(n)];

    std::vector<bool> is_piv(static_cast<size_t>(n), false);
    for (size_t c : piv) is_piv[c] = true;
    for (size_t c = 0; c < static_cast<size_t>(n); ++c) {
        if (is_piv[c]) continue;
        QVec v(static_cast<size_t>(n), Rational(0));
        v[c] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][c];
        sp.basis.push_back(std::move(v));
    }
    return sp;
}

AffForm reduce_mod(AffForm g, const QMat& hull_rows, const std::vector<size_t>& hull_piv,
                   size_t n) {
    for (size_t k = 0; k < hull_rows.size(); ++k) {
        Rational c = g.a[hull_piv[k]];
        if (c == 0) continue;
        for (size_t j = 0; j < n; ++j) g.a[j] -= c * hull_rows[k][j];
        g.b -= c * hull_rows[k][n];
    }
    return g;
}

bool is_zero_vec(const QVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

bool ineq_less(const Ineq& x, const Ineq& y) {
    if (x.f.a != y.f.a) return x.f.a < y.f.a;
    if (x.f.b != y.f.b) return x.f.b < y.f.b;
    return x.strict < y.strict;
}

nlohmann::json form_json(const AffForm& f) {
    nlohmann::json ja = nlohmann::json::array();
    for (const Rational& x : f.a) ja.push_back(rational_to_string(x));
    return {{"a", ja}, {"b", rational_to_string(f.b)}};
}

} // namespace

TropPoly tropicalize(const LaurentPoly& f) {
    if (f.is_zero()) throw zero_polynomial("tropicalization of the zero polynomial");
    TropPoly tp;
    tp.n = f.nvars();
    for (const auto& [c, a] : f.terms()) tp.terms.push_back({c, a.val().r});
    return tp;
}

Rational trop_value(const TropPoly& tp, const QVec& u) {
    if (u.size() != static_cast<size_t>(tp.n)) throw length_mismatch("trop_value point length");
    if (tp.terms.empty()) throw zero_polynomial("trop_value of an empty polynomial");
    bool first = true;
    Rational best;
    for (const TropTerm& t : tp.terms) {
        Rational v = t.w;
        for (size_t j = 0; j < u.size(); ++j) v += Rational(t.c[j]) * u[j];
        if (first || v < best) best = v, first = false;
    }
    return best;
}

std::vector<size_t> argmin_terms(const TropPoly& tp, const QVec& u) {
    Rational best = trop_value(tp, u);
    std::vector<size_t> out;
    for (size_t i = 0; i < tp.terms.size(); ++i) {
        Rational v = tp.terms[i].w;
        for (size_t j = 0; j < u.size(); ++j) v += Rational(tp.terms[i].c[j]) * u[j];
        if (v == best) out.push_back(i);
    }
    return out;
}

bool is_on_variety(const TropPoly& tp, const QVec& u) {
    return argmin_terms(tp, u).size() >= 2;
}

Rational aff_eval(const AffForm& f, const QVec& u) {
    if (u.size() != f.a.size()) throw length_mismatch("affine form point length");
    Rational v = f.b;
    for (size_t j = 0; j < u.size(); ++j) v += f.a[j] * u[j];
    return v;
}

bool Cell::contains(const QVec& u) const {
    if (u.size() != static_cast<size_t>(n)) throw length_mismatch("cell point length");
    for (const AffForm& e : eq)
        if (aff_eval(e, u) != 0) return false;
    for (const Ineq& iq : ineq) {
        Rational v = aff_eval(iq.f, u);
        if (iq.strict ? v <= 0 : v < 0) return false;
    }
    return true;
}

nlohmann::json Cell::to_json() const {
    nlohmann::json je = nlohmann::json::array();
    for (const AffForm& e : eq) je.push_back(form_json(e));
    nlohmann::json ji = nlohmann::json::array();
    for (const Ineq& iq : ineq) {
        nlohmann::json j = form_json(iq.f);
        j["strict"] = iq.strict;
        ji.push_back(j);
    }
    nlohmann::json jv = nlohmann::json::array();
    for (const QVec& v : verts) {
        nlohmann::json jp = nlohmann::json::array();
        for (const Rational& x : v) jp.push_back(rational_to_string(x));
        jv.push_back(jp);
    }
    return {{"dim", dim},
            {"eq", je},
            {"ineq", ji},
            {"verts", jv},
            {"verts_excluded", vert_excluded}};
}

// the constraint system alone is a complete invariant; the vertex data in
// to_json is derived from it
std::string Cell::key() const {
    nlohmann::json j = to_json();
    return nlohmann::json{{"dim", j["dim"]}, {"eq", j["eq"]}, {"ineq", j["ineq"]}}.dump();
}

std::optional<Cell> make_cell(int n, const std::vector<AffForm>& eqs,
                              const std::vector<Ineq>& ineqs) {
    if (n < 1 || n > 3) throw unsupported_dimension("make_cell supports 1 <= n <= 3");
    const size_t un = static_cast<size_t>(n);
    auto sp = solve_affine(n, eqs);
    if (!sp) return std::nullopt;
    const size_t d = sp->basis.size();

    // substitute u = p + B t; constraints with no t-dependence resolve now
    struct G {
        QVec alpha;
        Rational beta;
        bool strict;
    };
    std::vector<G> gs;
    for (const Ineq& iq : ineqs) {
        G g;
        g.strict = iq.strict;
        g.beta = aff_eval(iq.f, sp->p);
        bool nonconst = false;
        for (size_t j = 0; j < d; ++j) {
            g.alpha.push_back(dot(iq.f.a, sp->basis[j]));
            nonconst = nonconst || g.alpha.back() != 0;
        }
        if (!nonconst) {
            if (g.beta < 0 || (g.strict && g.beta == 0)) return std::nullopt;
            continue;
        }
        gs.push_back(std::move(g));
    }

    // vertices of the closure in t-space; callers guarantee boundedness, so
    // the vertex hull is the whole closed set
    QMat verts_t;
    if (d == 0) {
        verts_t.push_back({});
    } else {
        for_subsets(gs.size(), d, [&](const std::vector<size_t>& idx) {
            QMat a;
            QVec rhs;
            for (size_t i : idx) {
                a.push_back(gs[i].alpha);
                rhs.push_back(-gs[i].beta);
            }
            auto t = solve_square(a, rhs);
            if (!t) return;
            for (const G& g : gs)
                if (dot(g.alpha, *t) + g.beta < 0) return;
            verts_t.push_back(*t);
        });
        std::sort(verts_t.begin(), verts_t.end());
        verts_t.erase(std::unique(verts_t.begin(), verts_t.end()), verts_t.end());
    }
    if (verts_t.empty()) return std::nullopt;

    // a strict form with maximum 0 over the closure never turns positive
    for (const G& g : gs) {
        if (!g.strict) continue;
        bool pos = false;
        for (const QVec& t : verts_t)
            if (dot(g.alpha, t) + g.beta > 0) {
                pos = true;
                break;
            }
        if (!pos) return std::nullopt;
    }

    Cell cell;
    cell.n = n;
    cell.dim = static_cast<int>(affine_dim(verts_t));

    for (const QVec& t : verts_t) {
        QVec u = sp->p;
        for (size_t j = 0; j < d; ++j)
            for (size_t c = 0; c < un; ++c) u[c] += t[j] * sp->basis[j][c];
        cell.verts.push_back(std::move(u));
    }
    std::sort(cell.verts.begin(), cell.verts.end());

    for (const QVec& v : cell.verts) {
        bool excl = false;
        for (const Ineq& iq : ineqs)
            if (iq.strict && aff_eval(iq.f, v) == 0) {
                excl = true;
                break;
            }
        cell.vert_excluded.push_back(excl);
    }

    // affine hull of the cell, recomputed from the vertices since the input
    // inequalities may pin more directions than the input equalities
    QMat hull_rows; // rref rows (a | b), pivot entries 1
    std::vector<size_t> hull_piv;
    {
        QMat diffs;
        for (size_t i = 1; i < cell.verts.size(); ++i) {
            QVec dv = cell.verts[i];
            for (size_t j = 0; j < un; ++j) dv[j] -= cell.verts[0][j];
            diffs.push_back(std::move(dv));
        }
        QMat forms = nullspace(diffs, un);
        QMat m;
        for (const QVec& a : forms) {
            QVec row = a;
            row.push_back(-dot(a, cell.verts[0]));
            m.push_back(std::move(row));
        }
        hull_piv = rref(m, un);
        m.resize(hull_piv.size());
        hull_rows = m;
        for (const QVec& row : hull_rows) {
            QVec pr = primitive_integer(row);
            AffForm f;
            f.a.assign(pr.begin(), pr.end() - 1);
            f.b = pr.back();
            cell.eq.push_back(std::move(f));
        }
    }

    if (cell.dim == 1) {
        // endpoint forms from the primitive direction; an endpoint is open
        // exactly when some strict input form vanishes there
        const QVec& v0 = cell.verts.front();
        const QVec& v1 = cell.verts.back();
        QVec w(un);
        for (size_t j = 0; j < un; ++j) w[j] = v1[j] - v0[j];
        auto endpoint_form = [&](const QVec& at, bool flip) {
            QVec row(un + 1);
            for (size_t j = 0; j < un; ++j) row[j] = flip ? -w[j] : w[j];
            row[un] = 0;
            for (size_t j = 0; j < un; ++j) row[un] -= row[j] * at[j];
            row = primitive_pos(std::move(row));
            AffForm f;
            f.a.assign(row.begin(), row.end() - 1);
            f.b = row.back();
            return f;
        };
        cell.ineq.push_back({endpoint_form(v0, false), cell.vert_excluded.front()});
        cell.ineq.push_back({endpoint_form(v1, true), cell.vert_excluded.back()});
    } else if (cell.dim >= 2) {
        // group input forms by their reduction modulo the hull; facets stay,
        // strict forms touching lower faces stay unless another strict form's
        // tight set strictly covers theirs
        struct Entry {
            AffForm f;
            bool strict = false;
            std::set<size_t> tight;
            bool facet = false;
        };
        std::map<std::string, Entry> by_key;
        for (const Ineq& iq : ineqs) {
            AffForm g = reduce_mod(iq.f, hull_rows, hull_piv, un);
            if (is_zero_vec(g.a)) continue;
            QVec row = g.a;
            row.push_back(g.b);
            row = primitive_pos(std::move(row));
            g.a.assign(row.begin(), row.end() - 1);
            g.b = row.back();
            std::ostringstream key;
            for (const Rational& x : row) key << rational_to_string(x) << ';';
            auto [it, fresh] = by_key.try_emplace(key.str());
            if (fresh) {
                it->second.f = g;
                QMat tight_pts;
                for (size_t i = 0; i < cell.verts.size(); ++i)
                    if (aff_eval(g, cell.verts[i]) == 0) {
                        it->second.tight.insert(i);
                        tight_pts.push_back(cell.verts[i]);
                    }
                it->second.facet = !tight_pts.empty() &&
                                   affine_dim(tight_pts) == static_cast<size_t>(cell.dim) - 1;
            }
            it->second.strict = it->second.strict || iq.strict;
        }
        for (const auto& [key, e] : by_key) {
            if (e.facet) {
                cell.ineq.push_back({e.f, e.strict});
                continue;
            }
            if (!e.strict || e.tight.empty()) continue;
            bool covered = false;
            for (const auto& [okey, o] : by_key) {
                if (&o == &e || !o.strict) continue;
                if (o.tight.size() > e.tight.size() &&
                    std::includes(o.tight.begin(), o.tight.end(), e.tight.begin(),
                                  e.tight.end())) {
                    covered = true;
                    break;
                }
            }
            if (!covered) cell.ineq.push_back({e.f, true});
        }
        std::sort(cell.ineq.begin(), cell.ineq.end(), ineq_less);
    }

    return cell;
}

std::optional<Cell> intersect_cells(const Cell& a, const Cell& b) {
    if (a.n != b.n) throw dimension_mismatch("intersecting cells of different ambient dimension");
    std::vector<AffForm> eqs = a.eq;
    eqs.insert(eqs.end(), b.eq.begin(), b.eq.end());
    std::vector<Ineq> ineqs = a.ineq;
    ineqs.insert(ineqs.end(), b.ineq.begin(), b.ineq.end());
    return make_cell(a.n, eqs, ineqs);
}

int PolyhedralComplex::dim() const {
    int d = -1;
    for (const Cell& c : cells) d = std::max(d, c.dim);
    return d;
}

nlohmann::json PolyhedralComplex::to_json() const {
    nlohmann::json jc = nlohmann::json::array();
    for (const Cell& c : cells) jc.push_back(c.to_json());
    return {{"n", n}, {"exact", exact}, {"cells", jc}};
}

void normalize_complex(PolyhedralComplex& pc) {
    std::vector<Cell> cells;
    std::set<std::string> seen;
    for (Cell& c : pc.cells) {
        std::string k = c.key();
        if (seen.insert(k).second) cells.push_back(std::move(c));
    }

    // keep only cells not contained in another cell
    std::vector<char> drop(cells.size(), 0);
    for (size_t i = 0; i < cells.size(); ++i) {
        std::string ki = cells[i].key();
        for (size_t j = 0; j < cells.size(); ++j) {
            if (i == j) continue;
            auto inter = intersect_cells(cells[i], cells[j]);
            if (inter && inter->key() == ki) {
                drop[i] = 1;
                break;
            }
        }
    }
    std::vector<Cell> maximal;
    for (size_t i = 0; i < cells.size(); ++i)
        if (!drop[i]) maximal.push_back(std::move(cells[i]));

    // pairwise intersections surface the lower cells where maximal ones meet
    std::set<std::string> keys;
    for (const Cell& c : maximal) keys.insert(c.key());
    std::vector<Cell> out = maximal;
    for (size_t i = 0; i < maximal.size(); ++i)
        for (size_t j = i + 1; j < maximal.size(); ++j) {
            auto inter = intersect_cells(maximal[i], maximal[j]);
            if (inter && keys.insert(inter->key()).second) out.push_back(std::move(*inter));
        }

    std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return a.key() < b.key();
    });
    pc.cells = std::move(out);
}

PolyhedralComplex hypersurface_cells(const TropPoly& tp, const Polytope& clip, bool open_clip) {
    if (tp.n != clip.dim()) throw dimension_mismatch("tropical polynomial vs clip polytope");
    const size_t un = static_cast<size_t>(tp.n);
    std::vector<Ineq> clip_ineqs;
    for (const Facet& fa : clip.facets()) {
        AffForm f;
        for (const Int& x : fa.v) f.a.push_back(Rational(x));
        f.b = -fa.lambda;
        clip_ineqs.push_back({std::move(f), open_clip});
    }

    PolyhedralComplex pc;
    pc.n = tp.n;
    auto diff_form = [&](size_t k, size_t l) {
        AffForm f;
        f.a.resize(un);
        for (size_t j = 0; j < un; ++j)
            f.a[j] = Rational(tp.terms[k].c[j]) - Rational(tp.terms[l].c[j]);
        f.b = tp.terms[k].w - tp.terms[l].w;
        return f;
    };
    for (size_t k = 0; k < tp.terms.size(); ++k)
        for (size_t l = k + 1; l < tp.terms.size(); ++l) {
            std::vector<AffForm> eqs = {diff_form(k, l)};
            std::vector<Ineq> ineqs = clip_ineqs;
            for (size_t j = 0; j < tp.terms.size(); ++j) {
                if (j == k || j == l) continue;
                ineqs.push_back({diff_form(j, k), false});
            }
            auto cell = make_cell(tp.n, eqs, ineqs);
            if (cell) pc.cells.push_back(std::move(*cell));
        }
    normalize_complex(pc);
    return pc;
}

PolyhedralComplex intersect_complexes(const std::vector<PolyhedralComplex>& cs) {
    if (cs.empty()) throw error("intersect_complexes needs at least one complex");
    PolyhedralComplex acc = cs[0];
    for (size_t i = 1; i < cs.size(); ++i) {
        if (cs[i].n != acc.n)
            throw dimension_mismatch("intersecting complexes of different ambient dimension");
        PolyhedralComplex next;
        next.n = acc.n;
        for (const Cell& a : acc.cells)
            for (const Cell& b : cs[i].cells) {
                auto inter = intersect_cells(a, b);
                if (inter) next.cells.push_back(std::move(*inter));
            }
        normalize_complex(next);
        acc = std::move(next);
    }
    acc.exact = cs.size() == 1 && cs[0].exact;
    return acc;
}

PolyhedralComplex crit_trop(const Polytope& p, const SubtorusSpec& s, const LaurentPoly& po) {
    std::vector<LaurentPoly> sys = critical_system(po, s);
    PolyhedralComplex out;
    out.n = p.dim();
    if (sys.empty()) {
        // full torus: no conditions, every interior point is critical
        std::vector<Ineq> ineqs;
        for (const Facet& fa : p.facets()) {
            AffForm f;
            for (const Int& x : fa.v) f.a.push_back(Rational(x));
            f.b = -fa.lambda;
            ineqs.push_back({std::move(f), true});
        }
        auto cell = make_cell(p.dim(), {}, ineqs);
        if (cell) out.cells.push_back(std::move(*cell));
        out.exact = true;
        return out;
    }
    std::vector<PolyhedralComplex> parts;
    parts.reserve(sys.size());
    for (const LaurentPoly& f : sys)
        parts.push_back(hypersurface_cells(tropicalize(f), p, true));
    out = intersect_complexes(parts);
    out.exact = parts.size() <= 1;
    return out;
}

PolyhedralComplex crit_trop(const Polytope& p, const SubtorusSpec& s) {
    return crit_trop(p, s, leading_potential(p));
}

} // namespace tropcrit
