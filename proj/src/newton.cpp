#include "tropcrit/newton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tropcrit/errors.hpp"

namespace tropcrit {

namespace {

using Cplx = std::complex<double>;

// bit-stable uniform double in [0,1): identical across platforms for a fixed seed
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Cplx random_unitish(std::mt19937_64& rng) {
    double th = 6.283185307179586 * u01(rng);
    double rad = 0.75 + 0.6 * u01(rng);
    return {rad * std::cos(th), rad * std::sin(th)};
}

Rational dot_qe(const QVec& u, const Expo& c) {
    Rational v = 0;
    for (size_t j = 0; j < u.size(); ++j) v += u[j] * Rational(c[j]);
    return v;
}

// f with y = T^u z substituted and the tropical minimum divided out, so every
// coefficient has valuation >= 0 with equality on the initial support
LaurentPoly normalized_shift(const LaurentPoly& f, const QVec& u) {
    if (f.is_zero()) throw zero_polynomial("normalizing the zero polynomial");
    bool first = true;
    Rational nu = 0;
    for (const auto& [c, a] : f.terms()) {
        Rational v = a.val().r + dot_qe(u, c);
        if (first || v < nu) nu = v, first = false;
    }
    LaurentPoly g(f.nvars());
    for (const auto& [c, a] : f.terms())
        g.add_term(c, monomial_mul(a, Scalar(1), dot_qe(u, c) - nu));
    return g;
}

LaurentPoly lp_partial(const LaurentPoly& f, int j) {
    LaurentPoly g(f.nvars());
    for (const auto& [c, a] : f.terms()) {
        if (c[static_cast<size_t>(j)] == 0) continue;
        Expo e = c;
        e[static_cast<size_t>(j)] -= 1;
        g.add_term(e, scalar_mul(Scalar(Rational(c[static_cast<size_t>(j)])), a));
    }
    return g;
}

Cplx eval_cpoly(const CPoly& p, const std::vector<Cplx>& z, double* scale = nullptr) {
    Cplx v = 0;
    double s = 1.0;
    for (const auto& [c, a] : p.terms) {
        Cplx term = a;
        for (size_t j = 0; j < z.size(); ++j)
            if (c[j] != 0) term *= std::pow(z[j], static_cast<double>(c[j]));
        v += term;
        s += std::abs(term);
    }
    if (scale) *scale = s;
    return v;
}

// dependent-coordinate restriction with the free coordinates substituted
using CMon = std::map<std::vector<long long>, Cplx>;

CMon restrict_poly(const CPoly& p, const std::vector<int>& free_idx,
                   const std::vector<Cplx>& free_vals, const std::vector<int>& dep) {
    CMon out;
    for (const auto& [c, a] : p.terms) {
        Cplx coeff = a;
        for (size_t t = 0; t < free_idx.size(); ++t) {
            long long e = c[static_cast<size_t>(free_idx[t])];
            if (e != 0) coeff *= std::pow(free_vals[t], static_cast<double>(e));
        }
        std::vector<long long> e;
        e.reserve(dep.size());
        for (int j : dep) e.push_back(c[static_cast<size_t>(j)]);
        out[e] += coeff;
    }
    for (auto it = out.begin(); it != out.end();)
        it = std::abs(it->second) <= 1e-12 ? out.erase(it) : std::next(it);
    return out;
}

// nonzero roots of a univariate Laurent polynomial via the companion matrix
std::vector<Cplx> poly_roots(const CMon& p) {
    if (p.empty()) return {};
    long long lo = p.begin()->first[0], hi = lo;
    for (const auto& [e, c] : p) {
        lo = std::min(lo, e[0]);
        hi = std::max(hi, e[0]);
    }
    if (hi == lo) return {}; // a monomial has no roots in the torus
    const int deg = static_cast<int>(hi - lo);
    std::vector<Cplx> a(static_cast<size_t>(deg) + 1, Cplx(0));
    for (const auto& [e, c] : p) a[static_cast<size_t>(e[0] - lo)] = c;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) m(i, deg - 1) = -a[static_cast<size_t>(i)] / a[static_cast<size_t>(deg)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<Cplx> roots;
    for (int i = 0; i < deg; ++i) {
        Cplx z = es.eigenvalues()(i);
        if (std::abs(z) > 1e-8) roots.push_back(z);
    }
    return roots;
}

void eval_square(const std::vector<CMon>& sys, const Eigen::VectorXcd& z, Eigen::VectorXcd& val,
                 Eigen::MatrixXcd& jac) {
    const int m = static_cast<int>(sys.size());
    val = Eigen::VectorXcd::Zero(m);
    jac = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (const auto& [e, c] : sys[static_cast<size_t>(i)]) {
            Cplx term = c;
            for (int k = 0; k < m; ++k)
                if (e[static_cast<size_t>(k)] != 0)
                    term *= std::pow(z(k), static_cast<double>(e[static_cast<size_t>(k)]));
            val(i) += term;
            for (int k = 0; k < m; ++k)
                if (e[static_cast<size_t>(k)] != 0)
                    jac(i, k) += term * static_cast<double>(e[static_cast<size_t>(k)]) / z(k);
        }
}

// damped Newton multi-start for small square residue systems
std::vector<Eigen::VectorXcd> square_roots(const std::vector<CMon>& sys, int m,
                                           std::mt19937_64& rng) {
    std::vector<Eigen::VectorXcd> roots;
    const int starts = 60, iters = 120;
    Eigen::VectorXcd val;
    Eigen::MatrixXcd jac;
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXcd z(m);
        for (int k = 0; k < m; ++k) z(k) = random_unitish(rng);
        bool converged = false;
        for (int it = 0; it < iters; ++it) {
            bool tiny = false;
            for (int k = 0; k < m; ++k) tiny = tiny || std::abs(z(k)) < 1e-9;
            if (tiny) break;
            eval_square(sys, z, val, jac);
            double res = val.norm();
            if (res < 1e-12) {
                converged = true;
                break;
            }
            Eigen::VectorXcd step = jac.fullPivLu().solve(val);
            if (!step.allFinite()) break;
            double lam = 1.0;
            bool moved = false;
            for (int h = 0; h < 24; ++h, lam *= 0.5) {
                Eigen::VectorXcd zn = z - lam * step;
                eval_square(sys, zn, val, jac);
                if (val.norm() < res) {
                    z = zn;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        if (!converged) continue;
        bool torus = true;
        for (int k = 0; k < m; ++k) torus = torus && std::abs(z(k)) > 1e-8;
        if (!torus) continue;
        bool dup = false;
        for (const auto& w : roots) dup = dup || (w - z).norm() < 1e-6;
        if (!dup) roots.push_back(z);
    }
    return roots;
}

std::vector<int> complement(int n, const std::vector<int>& idx) {
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int j : idx) used[static_cast<size_t>(j)] = true;
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
        if (!used[static_cast<size_t>(j)]) out.push_back(j);
    return out;
}

// solve J x = b over truncated series; requires valuation-zero pivots
std::optional<std::vector<NovikovSeries>> solve_series(std::vector<std::vector<NovikovSeries>> j,
                                                       std::vector<NovikovSeries> b,
                                                       const Rational& order) {
    const size_t m = b.size();
    const ExtRat w(order);
    for (size_t col = 0; col < m; ++col) {
        size_t best = m;
        ExtRat bv = ExtRat::infinity();
        for (size_t rr = col; rr < m; ++rr) {
            if (j[rr][col].is_zero()) continue;
            if (j[rr][col].val() < bv) {
                bv = j[rr][col].val();
                best = rr;
            }
        }
        if (best == m || bv != ExtRat(Rational(0))) return std::nullopt;
        std::swap(j[col], j[best]);
        std::swap(b[col], b[best]);
        NovikovSeries inv = invert(j[col][col], order);
        for (size_t c2 = 0; c2 < m; ++c2) j[col][c2] = truncate_to(mul(inv, j[col][c2]), w);
        b[col] = truncate_to(mul(inv, b[col]), w);
        for (size_t rr = 0; rr < m; ++rr) {
            if (rr == col || j[rr][col].is_zero()) continue;
            NovikovSeries f = j[rr][col];
            for (size_t c2 = 0; c2 < m; ++c2)
                j[rr][c2] = sub(j[rr][c2], truncate_to(mul(f, j[col][c2]), w));
            b[rr] = sub(b[rr], truncate_to(mul(f, b[col]), w));
        }
    }
    return b;
}

} // namespace

CPoly initial_form(const LaurentPoly& f, const QVec& u) {
    if (f.is_zero()) throw zero_polynomial("initial form of the zero polynomial");
    if (u.size() != static_cast<size_t>(f.nvars()))
        throw length_mismatch("initial form point length");
    bool first = true;
    Rational nu = 0;
    for (const auto& [c, a] : f.terms()) {
        Rational v = a.val().r + dot_qe(u, c);
        if (first || v < nu) nu = v, first = false;
    }
    CPoly p;
    p.n = f.nvars();
    for (const auto& [c, a] : f.terms())
        if (a.val().r + dot_qe(u, c) == nu) p.terms[c] = a.leading().to_complex();
    return p;
}

const char* lift_status_name(LiftStatus s) {
    switch (s) {
        case LiftStatus::ok: return "ok";
        case LiftStatus::singular_jacobian: return "singular_jacobian";
        case LiftStatus::no_root: return "no_root";
        case LiftStatus::stalled: return "stalled";
    }
    return "unknown";
}

nlohmann::json LiftReport::to_json() const {
    nlohmann::json ju = nlohmann::json::array();
    for (const Rational& x : u) ju.push_back(rational_to_string(x));
    nlohmann::json jr = nlohmann::json::array();
    for (const ExtRat& x : residual_vals) jr.push_back(extrat_to_string(x));
    nlohmann::json jy = nlohmann::json::array();
    for (const NovikovSeries& s : y) jy.push_back(s.to_json());
    nlohmann::json jz = nlohmann::json::array();
    for (const NovikovSeries& s : z) jz.push_back(s.to_json());
    return {{"status", lift_status_name(status)}, {"u", ju},
            {"free", free_coords},               {"order", rational_to_string(order)},
            {"residual_vals", jr},               {"y", jy},
            {"z", jz}};
}

LiftReport newton_lift(const std::vector<LaurentPoly>& sys, const QVec& u,
                       const std::vector<std::complex<double>>& seed,
                       const std::vector<int>& free_coords, const Rational& order) {
    if (sys.empty()) throw error("newton_lift needs a nonempty system");
    const int n = sys[0].nvars();
    const size_t m = sys.size();
    if (u.size() != static_cast<size_t>(n) || seed.size() != static_cast<size_t>(n))
        throw length_mismatch("newton_lift point length");
    if (free_coords.size() + m != static_cast<size_t>(n))
        throw dimension_mismatch("free coordinate count vs system size");

    LiftReport rep;
    rep.u = u;
    rep.free_coords = free_coords;
    rep.order = order;

    std::vector<int> dep = complement(n, free_coords);
    std::vector<LaurentPoly> ghat;
    ghat.reserve(m);
    for (const LaurentPoly& f : sys) ghat.push_back(normalized_shift(f, u));
    // clear negative powers: z^m ghat has the same torus zeros and, since the
    // coordinates have valuation zero, residuals of the same certified order,
    // but evaluating it never needs a series inverse
    for (LaurentPoly& g : ghat) {
        Expo shift(static_cast<size_t>(n), 0);
        for (const auto& [c, a] : g.terms())
            for (int j = 0; j < n; ++j)
                shift[static_cast<size_t>(j)] =
                    std::max(shift[static_cast<size_t>(j)], -c[static_cast<size_t>(j)]);
        bool trivial = true;
        for (long long s : shift) trivial = trivial && s == 0;
        if (trivial) continue;
        LaurentPoly cleared(n);
        for (const auto& [c, a] : g.terms()) {
            Expo d = c;
            for (int j = 0; j < n; ++j) d[static_cast<size_t>(j)] += shift[static_cast<size_t>(j)];
            cleared.add_term(d, a);
        }
        g = std::move(cleared);
    }
    std::vector<std::vector<LaurentPoly>> partials;
    for (size_t i = 0; i < m; ++i) {
        std::vector<LaurentPoly> row;
        for (int jd : dep) row.push_back(lp_partial(ghat[i], jd));
        partials.push_back(std::move(row));
    }

    // magnitude data for the residual noise floor: a complex coefficient whose
    // size is what coefficient drops and roundoff produce after being amplified
    // by the system's coefficients, the coordinate magnitudes, and the monomial
    // degrees cannot be told apart from an exact cancellation
    double sys_scale = 0.0;
    long long deg_max = 0;
    for (const LaurentPoly& g : ghat)
        for (const auto& [c, a] : g.terms()) {
            long long d = 0;
            for (long long e : c) d += std::llabs(e);
            deg_max = std::max(deg_max, d);
            for (const NovTerm& t : a.terms())
                sys_scale = std::max(sys_scale, std::abs(t.coeff.to_complex()));
        }

    std::vector<NovikovSeries> z;
    z.reserve(static_cast<size_t>(n));
    for (int jv = 0; jv < n; ++jv)
        z.push_back(NovikovSeries::constant(Scalar(seed[static_cast<size_t>(jv)])));

    const ExtRat w(order);
    rep.status = LiftStatus::stalled;
    Rational prev = -1;
    for (int step = 0; step < 64; ++step) {
        double z_scale = 0.0;
        for (const NovikovSeries& zj : z)
            for (const NovTerm& t : zj.terms())
                z_scale = std::max(z_scale, std::abs(t.coeff.to_complex()));
        const double noise_floor = kZeroTol * (1.0 + sys_scale) * (1.0 + z_scale) *
                                   (1.0 + static_cast<double>(deg_max));
        // first exponent whose coefficient is meaningful at working precision:
        // exact rational coefficients always are, complex ones only above the
        // noise floor (the same grey zone the seed filter admits at step zero)
        auto certified_from = [&](const NovikovSeries& s) {
            for (const NovTerm& t : s.terms())
                if (t.coeff.exact() || std::abs(t.coeff.to_complex()) > noise_floor)
                    return ExtRat(t.exp);
            return s.truncation();
        };

        std::vector<NovikovSeries> res;
        ExtRat cert = ExtRat::infinity();
        for (size_t i = 0; i < m; ++i) {
            res.push_back(eval(ghat[i], z, order));
            cert = min(cert, certified_from(res[i]));
        }
        rep.residual_vals.push_back(cert);
        if (cert >= w) {
            rep.status = LiftStatus::ok;
            break;
        }
        Rational cert_q = cert.r;
        if (cert_q == 0) {
            // the seed does not kill the valuation-zero layer
            rep.status = step == 0 ? LiftStatus::no_root : LiftStatus::stalled;
            break;
        }
        if (step > 0 && cert_q <= prev) {
            rep.status = LiftStatus::stalled;
            break;
        }
        prev = cert_q;

        std::vector<std::vector<NovikovSeries>> jac(m);
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < m; ++k) jac[i].push_back(eval(partials[i][k], z, order));
        auto delta = solve_series(std::move(jac), res, order);
        if (!delta) {
            rep.status = LiftStatus::singular_jacobian;
            break;
        }
        bool moved = false;
        for (const NovikovSeries& d : *delta) moved = moved || !d.is_zero();
        if (!moved) {
            // J^{-1} res rounded to zero coefficient-wise: every remaining
            // residual term is below the scalar zero threshold once weighted
            // by the Jacobian, the same grey zone the seed filter admits at
            // step zero.  The evaluation truncation is the only bound left.
            ExtRat floor_cert = ExtRat::infinity();
            for (const NovikovSeries& ri : res) floor_cert = min(floor_cert, ri.truncation());
            rep.residual_vals.back() = floor_cert;
            rep.status = floor_cert >= w ? LiftStatus::ok : LiftStatus::stalled;
            break;
        }
        for (size_t k = 0; k < m; ++k) {
            size_t jd = static_cast<size_t>(dep[k]);
            z[jd] = truncate_to(sub(z[jd], (*delta)[k]), w);
        }
    }

    rep.z = z;
    for (int jv = 0; jv < n; ++jv)
        rep.y.push_back(monomial_mul(z[static_cast<size_t>(jv)], Scalar(1),
                                     u[static_cast<size_t>(jv)]));
    return rep;
}

SeedResult find_seeds(const std::vector<LaurentPoly>& sys, const QVec& u, std::mt19937_64& rng) {
    if (sys.empty()) throw error("find_seeds needs a nonempty system");
    const int n = sys[0].nvars();
    const int m = static_cast<int>(sys.size());
    if (m > n) throw dimension_mismatch("more equations than variables");
    const int r = n - m;

    std::vector<CPoly> ini;
    ini.reserve(sys.size());
    for (const LaurentPoly& f : sys) ini.push_back(initial_form(f, u));

    SeedResult out;
    std::vector<int> free_idx(static_cast<size_t>(r));
    std::iota(free_idx.begin(), free_idx.end(), 0);
    while (true) {
        std::vector<Cplx> free_vals;
        for (int t = 0; t < r; ++t) free_vals.push_back(random_unitish(rng));
        std::vector<int> dep = complement(n, free_idx);

        std::vector<CMon> square;
        bool degenerate = false;
        for (const CPoly& p : ini) {
            CMon q = restrict_poly(p, free_idx, free_vals, dep);
            degenerate = degenerate || q.empty();
            square.push_back(std::move(q));
        }

        std::vector<std::vector<Cplx>> seeds;
        if (!degenerate) {
            std::vector<Eigen::VectorXcd> roots;
            if (m == 1) {
                for (Cplx zr : poly_roots(square[0])) {
                    Eigen::VectorXcd v(1);
                    v(0) = zr;
                    roots.push_back(v);
                }
            } else {
                roots = square_roots(square, m, rng);
            }
            for (const auto& root : roots) {
                std::vector<Cplx> full(static_cast<size_t>(n));
                for (int t = 0; t < r; ++t)
                    full[static_cast<size_t>(free_idx[static_cast<size_t>(t)])] =
                        free_vals[static_cast<size_t>(t)];
                for (int k = 0; k < m; ++k)
                    full[static_cast<size_t>(dep[static_cast<size_t>(k)])] = root(k);
                bool good = true;
                for (const CPoly& p : ini) {
                    double scale = 1.0;
                    Cplx v = eval_cpoly(p, full, &scale);
                    good = good && std::abs(v) <= 1e-10 * scale;
                }
                if (good) seeds.push_back(std::move(full));
            }
        }
        if (!seeds.empty()) {
            out.free_coords = free_idx;
            out.seeds = std::move(seeds);
            return out;
        }

        // next r-subset of {0..n-1} in lexicographic order
        int i = r;
        while (i > 0 && free_idx[static_cast<size_t>(i - 1)] == n - r + i - 1) --i;
        if (i == 0) break;
        ++free_idx[static_cast<size_t>(i - 1)];
        for (int t = i; t < r; ++t)
            free_idx[static_cast<size_t>(t)] = free_idx[static_cast<size_t>(t - 1)] + 1;
    }
    return out;
}

QVec sample_point(const Cell& c, std::mt19937_64& rng) {
    if (c.verts.empty()) throw error("sampling an empty cell");
    // positive weights over the closure vertices land in the relative
    // interior; the narrow band keeps samples away from the closure boundary
    // (where exponent gaps collapse and series grow dense) while still generic
    std::vector<Rational> w;
    Rational tot = 0;
    for (size_t i = 0; i < c.verts.size(); ++i) {
        Rational wi(64 + static_cast<long long>(rng() % 33));
        tot += wi;
        w.push_back(std::move(wi));
    }
    QVec u(static_cast<size_t>(c.n), Rational(0));
    for (size_t i = 0; i < c.verts.size(); ++i)
        for (size_t j = 0; j < u.size(); ++j) u[j] += w[i] * c.verts[i][j];
    for (Rational& x : u) x /= tot;
    return u;
}

nlohmann::json ProbeReport::to_json() const {
    nlohmann::json jc = nlohmann::json::array();
    for (const CellProbe& c : cells)
        jc.push_back({{"dim", c.dim},
                      {"samples", c.samples},
                      {"seeds_found", c.seeds_found},
                      {"lifts_ok", c.lifts_ok},
                      {"ok_samples", c.ok_samples},
                      {"singular_samples", c.singular_samples},
                      {"verified", c.verified}});
    return {{"probed_dim", probed_dim}, {"spurious", spurious}, {"cells", jc}};
}

ProbeReport dimension_probe(const std::vector<LaurentPoly>& sys, const PolyhedralComplex& pc,
                            int samples, const Rational& order, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ProbeReport rep;
    for (const Cell& cell : pc.cells) {
        CellProbe cp;
        cp.dim = cell.dim;
        cp.samples = cell.dim == 0 ? 1 : samples;
        for (int s = 0; s < cp.samples; ++s) {
            QVec u = sample_point(cell, rng);
            if (sys.empty()) {
                // no conditions: everything lifts trivially
                ++cp.seeds_found;
                ++cp.lifts_ok;
                ++cp.ok_samples;
                continue;
            }
            SeedResult sr = find_seeds(sys, u, rng);
            cp.seeds_found += static_cast<int>(sr.seeds.size());
            int ok = 0, singular = 0;
            for (const auto& sd : sr.seeds) {
                LiftReport lr = newton_lift(sys, u, sd, sr.free_coords, order);
                if (lr.status == LiftStatus::ok) ++ok;
                if (lr.status == LiftStatus::singular_jacobian) ++singular;
            }
            cp.lifts_ok += ok;
            if (ok > 0) ++cp.ok_samples;
            else if (singular > 0) ++cp.singular_samples;
        }
        cp.verified = cp.ok_samples > 0;
        if (cp.verified)
            rep.probed_dim = std::max(rep.probed_dim, cp.dim);
        else
            ++rep.spurious;
        rep.cells.push_back(cp);
    }
    return rep;
}

} // namespace tropcrit
