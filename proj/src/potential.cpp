#include "tropcrit/potential.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace tropcrit {

bool GradedLexDesc::operator()(const Expo& a, const Expo& b) const {
    long long da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    if (da != db) return da > db;
    // within a degree: earlier variables dominate regardless of sign,
    // so e.g. y1, y2, y1^-1, y2^-1 print in that order
    Expo aa = a, ab = b;
    for (auto& x : aa) x = x < 0 ? -x : x;
    for (auto& x : ab) x = x < 0 ? -x : x;
    if (aa != ab) return aa > ab;
    return a > b;
}

void LaurentPoly::add_term(const Expo& c, const NovikovSeries& a) {
    if (static_cast<int>(c.size()) != n_) throw dimension_mismatch("exponent length");
    auto it = terms_.find(c);
    if (it == terms_.end()) {
        if (!a.is_zero()) terms_.emplace(c, a);
        return;
    }
    NovikovSeries s = add(it->second, a);
    if (s.is_zero()) terms_.erase(it); // cancellation drops the monomial eagerly
    else it->second = std::move(s);
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars() != b.nvars()) throw dimension_mismatch("lp_add vars");
    LaurentPoly s = a;
    for (const auto& [c, coeff] : b.terms()) s.add_term(c, coeff);
    return s;
}

LaurentPoly lp_neg(const LaurentPoly& a) {
    LaurentPoly s(a.nvars());
    for (const auto& [c, coeff] : a.terms()) s.add_term(c, neg(coeff));
    return s;
}

LaurentPoly lp_scalar_mul(const Scalar& c, const LaurentPoly& a) {
    LaurentPoly s(a.nvars());
    for (const auto& [e, coeff] : a.terms()) s.add_term(e, scalar_mul(c, coeff));
    return s;
}

SubtorusSpec::SubtorusSpec(int n_, IntMat k_) : k(std::move(k_)), n(n_) {
    if (static_cast<int>(k.size()) != n) throw dimension_mismatch("K must have n rows");
    r = k.empty() ? 0 : static_cast<int>(k[0].size());
    for (const auto& row : k)
        if (static_cast<int>(row.size()) != r) throw dimension_mismatch("ragged K");
    a = annihilator_basis(k);
}

LaurentPoly leading_potential(const Polytope& p) {
    LaurentPoly po(p.dim());
    for (const auto& f : p.facets()) {
        Expo c;
        for (const auto& x : f.v) {
            if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
                throw error("facet normal entry too large");
            c.push_back(static_cast<long long>(x));
        }
        po.add_term(c, NovikovSeries::monomial(Scalar(1), Rational(-f.lambda)));
    }
    return po;
}

LaurentPoly with_corrections(const LaurentPoly& po, const Polytope& p,
                             const std::vector<CorrectionTerm>& corrections) {
    LaurentPoly out = po;
    const auto& fs = p.facets();
    for (const auto& ct : corrections) {
        if (ct.e.size() != fs.size()) throw length_mismatch("correction e length");
        long long esum = 0;
        for (auto x : ct.e) esum += x;
        if (esum <= 0) throw error("correction needs sum e > 0");
        if (!(ct.rho > 0)) throw error("correction needs rho > 0");
        Expo c(po.nvars(), 0);
        Rational energy = ct.rho;
        for (size_t i = 0; i < fs.size(); ++i) {
            for (int j = 0; j < po.nvars(); ++j)
                c[j] += ct.e[i] * static_cast<long long>(fs[i].v[j]);
            energy -= Rational(ct.e[i]) * fs[i].lambda;
        }
        out.add_term(c, NovikovSeries::monomial(ct.r, energy));
    }
    return out;
}

LaurentPoly log_derivative(const LaurentPoly& f, int j) {
    if (j < 0 || j >= f.nvars()) throw index_out_of_range("log_derivative index");
    LaurentPoly out(f.nvars());
    for (const auto& [c, a] : f.terms()) {
        if (c[j] == 0) continue;
        out.add_term(c, scalar_mul(Scalar(Rational(c[j])), a));
    }
    return out;
}

std::vector<LaurentPoly> critical_system(const LaurentPoly& po, const SubtorusSpec& s) {
    if (po.nvars() != s.n) throw dimension_mismatch("potential vs subtorus vars");
    std::vector<LaurentPoly> logd;
    for (int j = 0; j < s.n; ++j) logd.push_back(log_derivative(po, j));
    std::vector<LaurentPoly> sys;
    for (const auto& row : s.a) {
        LaurentPoly f(s.n);
        for (int j = 0; j < s.n; ++j) {
            if (row[j] == 0) continue;
            f = lp_add(f, lp_scalar_mul(Scalar(Rational(row[j])), logd[j]));
        }
        sys.push_back(std::move(f));
    }
    return sys;
}

NovikovSeries eval(const LaurentPoly& f, const std::vector<NovikovSeries>& y,
                   const Rational& order) {
    if (y.size() != static_cast<size_t>(f.nvars())) throw length_mismatch("eval arity");
    for (const auto& s : y)
        if (s.is_zero()) throw zero_coordinate("eval at zero coordinate");

    auto attempt = [&](const Rational& work) {
        // exactly-known intermediates (infinite truncation) are never clipped, so
        // e.g. monomial coordinates evaluate with no artificial precision loss
        auto clip = [&](NovikovSeries x) {
            return x.truncation().inf ? x : truncate_to(std::move(x), ExtRat(work));
        };
        NovikovSeries acc;
        bool first = true;
        for (const auto& [c, a] : f.terms()) {
            NovikovSeries term = a;
            for (int j = 0; j < f.nvars(); ++j) {
                if (c[j] == 0) continue;
                NovikovSeries base = c[j] > 0 ? y[j] : invert(y[j], work);
                long long k = c[j] > 0 ? c[j] : -c[j];
                for (long long t = 0; t < k; ++t) term = clip(mul(term, base));
            }
            acc = first ? term : add(acc, term);
            first = false;
        }
        return acc;
    };

    Rational work = order;
    NovikovSeries r;
    ExtRat prev;
    for (int tries = 0; tries < 12; ++tries) {
        r = attempt(work);
        if (r.truncation().inf) return r; // exact value, nothing more to learn
        if (!(r.truncation() < ExtRat(order))) return truncate_to(r, ExtRat(order));
        // negative exponents shifted the honest truncation below `order`; widen,
        // unless widening stopped helping (coefficients known too coarsely)
        if (tries > 0 && !(prev < r.truncation())) break;
        prev = r.truncation();
        work += order - r.truncation().r + 1;
    }
    return r;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, a] : terms_) {
        // coefficient: single-term series print inline, composites in parens
        std::string coeff;
        bool neg_pulled = false;
        if (a.terms().size() == 1 && a.truncation().inf) {
            const auto& t = a.terms()[0];
            Scalar cs = t.coeff;
            std::string body;
            bool minus = cs.exact() && cs.rat() < 0;
            if (minus) {
                cs = -cs;
                neg_pulled = true;
            }
            bool unit = cs.exact() && cs.rat() == 1;
            if (t.exp == 0) {
                body = cs.str();
                if (unit) body = "1";
            } else {
                std::string texp = denominator(t.exp) == 1
                                       ? "T^" + numerator(t.exp).str()
                                       : "T^(" + rational_to_string(t.exp) + ")";
                body = unit ? texp : cs.str() + "*" + texp;
            }
            coeff = body;
        } else {
            coeff = "(" + a.str() + ")";
        }
        if (first) {
            if (neg_pulled) os << "-";
        } else {
            os << (neg_pulled ? " - " : " + ");
        }
        first = false;
        bool allzero = true;
        for (auto x : c) allzero = allzero && x == 0;
        if (allzero) {
            os << coeff;
            continue;
        }
        if (coeff != "1") os << coeff << "*";
        bool firstvar = true;
        for (size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0) continue;
            if (!firstvar) os << "*";
            firstvar = false;
            os << "y" << (j + 1);
            if (c[j] != 1) os << "^" << c[j];
        }
    }
    return os.str();
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& [c, a] : terms_) {
        ts.push_back({{"c", c}, {"coeff", a.to_json()}});
    }
    return {{"n", n_}, {"terms", ts}};
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    try {
        LaurentPoly f(j.at("n").get<int>());
        for (const auto& jt : j.at("terms")) {
            Expo c = jt.at("c").get<Expo>();
            f.add_term(c, NovikovSeries::from_json(jt.at("coeff")));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad laurent json: ") + e.what());
    }
}

} // namespace tropcrit
