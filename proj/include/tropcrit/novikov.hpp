#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/rational.hpp"

namespace tropcrit {

// Coefficients live either in Q (exact, used throughout the tropical pipeline)
// or in C as double (used only by the Newton lifting stage).
inline constexpr double kZeroTol = 1e-10;

class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(std::complex<double> z) : v_(z) {}

    bool exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const { return std::get<Rational>(v_); }
    std::complex<double> to_complex() const;

    // exact zero for rationals, |z| <= kZeroTol for complex
    bool is_zero() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const; // zero_division on zero

    // exact structural equality (mixed kinds compare as complex)
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::variant<Rational, std::complex<double>> v_;
};

struct NovTerm {
    Rational exp;
    Scalar coeff;
};

// Finite Novikov tail: sum of coeff*T^exp with strictly increasing exponents,
// explicitly tracked truncation (terms with exp >= trunc are unknown and never stored).
class NovikovSeries {
public:
    NovikovSeries() = default; // exact zero, infinite truncation

    static NovikovSeries zero() { return {}; }
    static NovikovSeries constant(Scalar c) { return monomial(std::move(c), 0); }
    static NovikovSeries one() { return constant(Scalar(1)); }
    static NovikovSeries monomial(Scalar c, Rational exp);
    // from arbitrary term list (merges, sorts, drops zeros and terms >= trunc)
    static NovikovSeries make(std::vector<NovTerm> terms, ExtRat trunc = ExtRat::infinity());

    const std::vector<NovTerm>& terms() const { return terms_; }
    const ExtRat& truncation() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }

    ExtRat val() const; // +infinity for the zero series
    const Scalar& leading() const; // index_out_of_range on zero

    // structural invariants; throws error on violation (used heavily in tests)
    void check_invariants() const;

    bool operator==(const NovikovSeries& o) const;
    bool operator!=(const NovikovSeries& o) const { return !(*this == o); }

    std::string str() const;
    nlohmann::json to_json() const;
    static NovikovSeries from_json(const nlohmann::json& j);

private:
    std::vector<NovTerm> terms_;
    ExtRat trunc_ = ExtRat::infinity();
    void normalize();
    friend NovikovSeries add(const NovikovSeries&, const NovikovSeries&);
    friend NovikovSeries neg(const NovikovSeries&);
    friend NovikovSeries mul(const NovikovSeries&, const NovikovSeries&);
    friend NovikovSeries truncate_to(const NovikovSeries&, const ExtRat&);
};

// trunc(a+b) = min(trunc a, trunc b); trunc(-a) = trunc a
NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries sub(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries neg(const NovikovSeries& a);
// trunc(ab) = min(trunc a + eff b, trunc b + eff a) with eff = min(val, trunc),
// so a series that normalized to zero still only vouches below its truncation
NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries scalar_mul(const Scalar& c, const NovikovSeries& a);
// multiply by c*T^e (shifts truncation by e)
NovikovSeries monomial_mul(const NovikovSeries& a, const Scalar& c, const Rational& e);
NovikovSeries truncate_to(const NovikovSeries& a, const ExtRat& t);

// b with a*b = 1 + O(T^order); zero_division on the zero series
NovikovSeries invert(const NovikovSeries& a, const Rational& order);
// exp(b0 + b+) = e^{b0} * sum b+^k / k!, computed to O(T^order);
// negative_valuation when val(b) < 0
NovikovSeries exp_novikov(const NovikovSeries& b, const Rational& order);

// termwise comparison with complex tolerance (exact parts compared exactly)
bool approx_equal(const NovikovSeries& a, const NovikovSeries& b, double tol);

} // namespace tropcrit
