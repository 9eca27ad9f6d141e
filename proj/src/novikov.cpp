#include "tropcrit/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tropcrit {

Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw parse_error("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return 0; // unreachable
}

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::string extrat_to_string(const ExtRat& e) {
    return e.inf ? "inf" : rational_to_string(e.r);
}

ExtRat parse_extrat(const std::string& s) {
    if (s == "inf") return ExtRat::infinity();
    return ExtRat(parse_rational(s));
}

// ---- Scalar ----

std::complex<double> Scalar::to_complex() const {
    if (exact()) return {static_cast<double>(rat()), 0.0};
    return std::get<std::complex<double>>(v_);
}

bool Scalar::is_zero() const {
    if (exact()) return rat() == 0;
    return std::abs(std::get<std::complex<double>>(v_)) <= kZeroTol;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (exact() && o.exact()) return Scalar(Rational(rat() + o.rat()));
    return Scalar(to_complex() + o.to_complex());
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (exact() && o.exact()) return Scalar(Rational(rat() * o.rat()));
    return Scalar(to_complex() * o.to_complex());
}

Scalar Scalar::operator-() const {
    if (exact()) return Scalar(Rational(-rat()));
    return Scalar(-std::get<std::complex<double>>(v_));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw zero_division("scalar inverse of zero");
    if (exact()) return Scalar(Rational(1 / rat()));
    return Scalar(1.0 / std::get<std::complex<double>>(v_));
}

bool Scalar::operator==(const Scalar& o) const {
    if (exact() && o.exact()) return rat() == o.rat();
    return to_complex() == o.to_complex();
}

std::string Scalar::str() const {
    if (exact()) return rational_to_string(rat());
    auto z = std::get<std::complex<double>>(v_);
    std::ostringstream os;
    os.precision(12);
    if (z.imag() == 0.0) {
        os << z.real();
    } else {
        os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    }
    return os.str();
}

// ---- NovikovSeries ----

NovikovSeries NovikovSeries::monomial(Scalar c, Rational exp) {
    NovikovSeries s;
    if (!c.is_zero()) s.terms_.push_back({std::move(exp), std::move(c)});
    return s;
}

NovikovSeries NovikovSeries::make(std::vector<NovTerm> terms, ExtRat trunc) {
    NovikovSeries s;
    s.terms_ = std::move(terms);
    s.trunc_ = std::move(trunc);
    s.normalize();
    return s;
}

void NovikovSeries::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const NovTerm& x, const NovTerm& y) { return x.exp < y.exp; });
    std::vector<NovTerm> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!trunc_.inf && !(t.exp < trunc_.r)) continue;
        if (!out.empty() && out.back().exp == t.exp) {
            out.back().coeff = out.back().coeff + t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    terms_.clear();
    for (auto& t : out)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

ExtRat NovikovSeries::val() const {
    if (terms_.empty()) return ExtRat::infinity();
    return ExtRat(terms_.front().exp);
}

const Scalar& NovikovSeries::leading() const {
    if (terms_.empty()) throw index_out_of_range("leading() of zero series");
    return terms_.front().coeff;
}

void NovikovSeries::check_invariants() const {
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff.is_zero()) throw error("zero coefficient stored");
        if (i + 1 < terms_.size() && !(terms_[i].exp < terms_[i + 1].exp))
            throw error("exponents not strictly increasing");
        if (!trunc_.inf && !(terms_[i].exp < trunc_.r))
            throw error("term at or beyond truncation");
    }
}

bool NovikovSeries::operator==(const NovikovSeries& o) const {
    if (trunc_ != o.trunc_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || !(terms_[i].coeff == o.terms_[i].coeff))
            return false;
    return true;
}

NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b) {
    NovikovSeries s;
    s.trunc_ = min(a.trunc_, b.trunc_);
    s.terms_ = a.terms_;
    s.terms_.insert(s.terms_.end(), b.terms_.begin(), b.terms_.end());
    s.normalize();
    return s;
}

NovikovSeries sub(const NovikovSeries& a, const NovikovSeries& b) { return add(a, neg(b)); }

NovikovSeries neg(const NovikovSeries& a) {
    NovikovSeries s;
    s.trunc_ = a.trunc_;
    s.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) s.terms_.push_back({t.exp, -t.coeff});
    return s;
}

NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b) {
    // lower bound for any term, stored or hidden behind the cut: a series that
    // normalized to zero still only vouches for exponents below its truncation
    auto eff = [](const NovikovSeries& x) { return min(x.val(), x.truncation()); };
    NovikovSeries s;
    s.trunc_ = min(a.trunc_ + eff(b), b.trunc_ + eff(a));
    s.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            s.terms_.push_back({Rational(x.exp + y.exp), x.coeff * y.coeff});
    s.normalize();
    return s;
}

NovikovSeries scalar_mul(const Scalar& c, const NovikovSeries& a) {
    return mul(NovikovSeries::constant(c), a);
}

NovikovSeries monomial_mul(const NovikovSeries& a, const Scalar& c, const Rational& e) {
    return mul(NovikovSeries::monomial(c, e), a);
}

NovikovSeries truncate_to(const NovikovSeries& a, const ExtRat& t) {
    NovikovSeries s;
    s.trunc_ = min(a.trunc_, t);
    s.terms_ = a.terms_;
    s.normalize();
    return s;
}

NovikovSeries invert(const NovikovSeries& a, const Rational& order) {
    if (a.is_zero()) throw zero_division("invert of zero series");
    const Rational v = a.val().r;
    const Scalar c = a.leading();
    // a = c T^v (1 + h), val h > 0; 1/(1+h) = sum (-h)^k until beyond `order`
    NovikovSeries h = monomial_mul(a, c.inverse(), Rational(-v));
    h = sub(h, NovikovSeries::one());
    // a monomial inverts exactly; otherwise the geometric tail is honest only below `order`
    ExtRat cap = h.is_zero() ? h.truncation() : ExtRat(order);
    h = truncate_to(h, cap);
    NovikovSeries s = truncate_to(NovikovSeries::one(), cap);
    NovikovSeries p = neg(h);
    while (!p.is_zero() && p.val() < ExtRat(order)) {
        s = add(s, p);
        p = truncate_to(mul(p, neg(h)), ExtRat(order));
    }
    return monomial_mul(s, c.inverse(), Rational(-v));
}

NovikovSeries exp_novikov(const NovikovSeries& b, const Rational& order) {
    if (b.val() < ExtRat(Rational(0)))
        throw negative_valuation("exp of series with negative valuation");
    Scalar b0(0);
    std::vector<NovTerm> plus;
    for (const auto& t : b.terms()) {
        if (t.exp == 0) b0 = t.coeff;
        else plus.push_back(t);
    }
    NovikovSeries bp = NovikovSeries::make(std::move(plus), b.truncation());
    Scalar factor(1);
    if (!b0.is_zero()) factor = Scalar(std::exp(b0.to_complex()));
    // a zero positive part leaves exp exact; otherwise the sum is honest only below `order`
    ExtRat cap = bp.is_zero() ? b.truncation() : min(ExtRat(order), b.truncation());
    NovikovSeries s = truncate_to(NovikovSeries::one(), cap);
    NovikovSeries p = truncate_to(bp, ExtRat(order));
    Rational kfact = 1;
    int k = 1;
    while (!p.is_zero()) {
        s = add(s, scalar_mul(Scalar(Rational(1 / kfact)), p));
        ++k;
        kfact *= k;
        p = truncate_to(mul(p, bp), ExtRat(order));
    }
    return scalar_mul(factor, s);
}

bool approx_equal(const NovikovSeries& a, const NovikovSeries& b, double tol) {
    if (a.truncation() != b.truncation()) return false;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i) {
        if (ta[i].exp != tb[i].exp) return false;
        if (ta[i].coeff.exact() && tb[i].coeff.exact()) {
            if (ta[i].coeff.rat() != tb[i].coeff.rat()) return false;
        } else if (std::abs(ta[i].coeff.to_complex() - tb[i].coeff.to_complex()) > tol) {
            return false;
        }
    }
    return true;
}

std::string NovikovSeries::str() const {
    std::ostringstream os;
    if (terms_.empty()) {
        if (trunc_.inf) return "0";
        return "O(T^" + rational_to_string(trunc_.r) + ")";
    }
    bool first = true;
    for (const auto& t : terms_) {
        std::string c = t.coeff.str();
        if (!first) {
            if (!c.empty() && c[0] == '-') {
                os << " - ";
                c = c.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        if (t.exp == 0) {
            os << c;
        } else {
            std::string texp = denominator(t.exp) == 1 ? "T^" + numerator(t.exp).str()
                                                       : "T^(" + rational_to_string(t.exp) + ")";
            if (c == "1") os << texp;
            else if (c == "-1") os << "-" << texp;
            else os << c << "*" << texp;
        }
    }
    if (!trunc_.inf) os << " + O(T^" << rational_to_string(trunc_.r) << ")";
    return os.str();
}

nlohmann::json NovikovSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json jt;
        jt["exp"] = rational_to_string(t.exp);
        if (t.coeff.exact()) {
            jt["re"] = rational_to_string(t.coeff.rat());
            jt["im"] = "0";
        } else {
            auto z = t.coeff.to_complex();
            jt["re"] = z.real();
            jt["im"] = z.imag();
        }
        terms.push_back(jt);
    }
    return nlohmann::json{{"terms", terms}, {"trunc", extrat_to_string(trunc_)}};
}

NovikovSeries NovikovSeries::from_json(const nlohmann::json& j) {
    try {
        std::vector<NovTerm> terms;
        for (const auto& jt : j.at("terms")) {
            Rational exp = parse_rational(jt.at("exp").get<std::string>());
            Scalar c;
            const auto& re = jt.at("re");
            const auto& im = jt.at("im");
            if (re.is_string()) {
                if (!im.is_string() || parse_rational(im.get<std::string>()) != 0)
                    throw parse_error("exact coefficient must have im == \"0\"");
                c = Scalar(parse_rational(re.get<std::string>()));
            } else {
                c = Scalar(std::complex<double>(re.get<double>(), im.get<double>()));
            }
            terms.push_back({std::move(exp), std::move(c)});
        }
        ExtRat tr = parse_extrat(j.at("trunc").get<std::string>());
        return make(std::move(terms), tr);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad series json: ") + e.what());
    }
}

} // namespace tropcrit
