#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include <nlohmann/json.hpp>

#include "tropcrit/novikov.hpp"

using namespace tropcrit;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num, den); }

NovikovSeries mono(long long cnum, long long cden, long long enum_, long long eden) {
    return NovikovSeries::monomial(Scalar(Rational(cnum, cden)), Rational(enum_, eden));
}

} // namespace

TEST_CASE("extended rationals") {
    ExtRat a(q(1, 2));
    ExtRat b(q(3));
    ExtRat inf = ExtRat::infinity();

    CHECK(a < b);
    CHECK(a < inf);
    CHECK(!(inf < inf));
    CHECK(inf == inf);
    CHECK(min(a, inf) == a);
    CHECK(max(a, inf) == inf);
    CHECK((a + b) == ExtRat(q(7, 2)));
    CHECK((a + inf) == inf);
    CHECK(extrat_to_string(inf) == "inf");
    CHECK(extrat_to_string(a) == "1/2");
    CHECK(parse_extrat("inf") == inf);
    CHECK(parse_extrat("-3/4") == ExtRat(q(-3, 4)));
}

TEST_CASE("rational parsing round trip") {
    CHECK(parse_rational("5") == q(5));
    CHECK(parse_rational("-7/3") == q(-7, 3));
    CHECK(rational_to_string(q(4)) == "4");
    CHECK(rational_to_string(q(-2, 6)) == "-1/3");
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("x"), parse_error);
}

TEST_CASE("scalar arithmetic and zero test") {
    Scalar a(q(2, 3));
    Scalar b(q(-2, 3));
    CHECK((a + b).is_zero());
    CHECK(a.exact());
    CHECK((a * Scalar(3)).rat() == q(2));
    CHECK(a.inverse().rat() == q(3, 2));
    CHECK_THROWS_AS(Scalar(0).inverse(), zero_division);

    // mixed kinds promote to complex
    Scalar z(std::complex<double>(0.5, 0.5));
    Scalar mixed = a * z;
    CHECK(!mixed.exact());
    CHECK(mixed.to_complex() == std::complex<double>(1.0 / 3, 1.0 / 3));

    // the float zero test absorbs rounding noise
    Scalar tiny(std::complex<double>(1e-12, -1e-12));
    CHECK(tiny.is_zero());
    CHECK(!Scalar(std::complex<double>(1e-9, 0)).is_zero());
}

TEST_CASE("valuation") {
    NovikovSeries s = add(mono(1, 1, 1, 2), mono(3, 1, 1, 1)); // T^{1/2} + 3T
    CHECK(s.val() == ExtRat(q(1, 2)));
    CHECK(NovikovSeries::zero().val() == ExtRat::infinity());
    NovikovSeries c = add(NovikovSeries::constant(Scalar(2)), mono(1, 1, 1, 3));
    CHECK(c.val() == ExtRat(q(0)));
    CHECK(c.leading() == Scalar(2));
    CHECK_THROWS_AS(NovikovSeries::zero().leading(), index_out_of_range);
}

TEST_CASE("ring arithmetic on pinned examples") {
    NovikovSeries one = NovikovSeries::one();
    NovikovSeries t = mono(1, 1, 1, 1);

    // (1+T)(1-T) = 1 - T^2
    NovikovSeries prod = mul(add(one, t), sub(one, t));
    CHECK(prod == sub(one, mul(t, t)));
    CHECK(prod.terms().size() == 2);

    // cancellation removes the term entirely
    CHECK(sub(mono(1, 1, 1, 2), mono(1, 1, 1, 2)).is_zero());

    // exponents add
    CHECK(mul(mono(1, 1, 1, 3), mono(1, 1, 2, 3)) == t);
}

TEST_CASE("truncation bookkeeping") {
    NovikovSeries a = truncate_to(add(NovikovSeries::one(), mono(1, 1, 1, 1)), ExtRat(q(2)));
    NovikovSeries b = truncate_to(mono(1, 1, 5, 1), ExtRat(q(4)));
    CHECK(b.is_zero()); // the only term sits beyond the cut
    CHECK(b.truncation() == ExtRat(q(4)));

    // add: min of the truncations
    CHECK(add(a, b).truncation() == ExtRat(q(2)));
    // mul: min(trunc a + val b, trunc b + val a); with b == O(T^4): min(2+4, 4+0) = 4... using a nonzero partner
    NovikovSeries c = mono(1, 1, 3, 2); // T^{3/2}, infinite truncation
    CHECK(mul(a, c).truncation() == ExtRat(q(7, 2)));
    CHECK(neg(a).truncation() == a.truncation());

    // terms at or past the truncation are never stored
    NovikovSeries d = NovikovSeries::make({{q(0), Scalar(1)}, {q(2), Scalar(1)}, {q(3), Scalar(1)}},
                                          ExtRat(q(2)));
    CHECK(d.terms().size() == 1);
    d.check_invariants();
}

TEST_CASE("invert pinned examples") {
    NovikovSeries one = NovikovSeries::one();
    NovikovSeries t = mono(1, 1, 1, 1);

    // geometric series: 1/(1+T) = 1 - T + T^2 + O(T^3)
    NovikovSeries inv = invert(add(one, t), 3);
    NovikovSeries expect = NovikovSeries::make(
        {{q(0), Scalar(1)}, {q(1), Scalar(-1)}, {q(2), Scalar(1)}}, ExtRat(q(3)));
    CHECK(inv == expect);

    // monomials invert exactly, keeping infinite truncation
    NovikovSeries ti = invert(t, 3);
    CHECK(ti == mono(1, 1, -1, 1));
    CHECK(ti.truncation() == ExtRat::infinity());
    CHECK(invert(mono(2, 1, 1, 2), 5) == mono(1, 2, -1, 2));

    CHECK_THROWS_AS(invert(NovikovSeries::zero(), 3), zero_division);
}

TEST_CASE("exp pinned examples") {
    NovikovSeries t = mono(1, 1, 1, 1);
    CHECK(exp_novikov(NovikovSeries::zero(), 7) == NovikovSeries::one());

    NovikovSeries e = exp_novikov(t, 3); // 1 + T + T^2/2 + O(T^3)
    NovikovSeries expect = NovikovSeries::make(
        {{q(0), Scalar(1)}, {q(1), Scalar(1)}, {q(2), Scalar(q(1, 2))}}, ExtRat(q(3)));
    CHECK(e == expect);

    // a constant term feeds e^{b0} through the complex path
    NovikovSeries b = add(NovikovSeries::constant(Scalar(2)), t);
    NovikovSeries eb = exp_novikov(b, 2);
    double e2 = std::exp(2.0);
    REQUIRE(eb.terms().size() == 2);
    CHECK(eb.terms()[0].exp == q(0));
    CHECK(std::abs(eb.terms()[0].coeff.to_complex() - e2) < 1e-12);
    CHECK(std::abs(eb.terms()[1].coeff.to_complex() - e2) < 1e-12);
    CHECK(eb.truncation() == ExtRat(q(2)));

    CHECK_THROWS_AS(exp_novikov(mono(1, 1, -1, 1), 3), negative_valuation);
}

namespace {

// random small series; positive_val restricts exponents to > 0
NovikovSeries random_series(std::mt19937_64& rng, bool complex_coeffs, bool positive_val,
                            bool allow_zero = true) {
    std::vector<NovTerm> terms;
    size_t nterms = rng() % 4 + (allow_zero ? 0 : 1);
    for (size_t i = 0; i < nterms; ++i) {
        Rational e(static_cast<long long>(rng() % 17) - (positive_val ? 0 : 8),
                   static_cast<long long>(rng() % 3 + 1));
        if (positive_val) e += Rational(1, 4);
        Scalar c;
        if (complex_coeffs) {
            double re = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
            double im = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
            if (std::abs(re) + std::abs(im) < 0.1) re = 0.5;
            c = Scalar(std::complex<double>(re, im));
        } else {
            long long num = static_cast<long long>(rng() % 19) - 9;
            if (num == 0) num = 3;
            c = Scalar(Rational(num, static_cast<long long>(rng() % 4 + 1)));
        }
        terms.push_back({e, c});
    }
    return NovikovSeries::make(std::move(terms));
}

} // namespace

TEST_CASE("randomized valuation axioms") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 500; ++iter) {
        bool cx = iter % 2 == 1;
        NovikovSeries a = random_series(rng, cx, false, false);
        NovikovSeries b = random_series(rng, cx, false, false);
        if (a.is_zero() || b.is_zero()) continue; // merged terms may cancel
        NovikovSeries p = mul(a, b);
        NovikovSeries s = add(a, b);
        p.check_invariants();
        s.check_invariants();
        CHECK(p.val() == a.val() + b.val());
        CHECK(s.val() >= min(a.val(), b.val()));

        // a * invert(a, 5) = 1 up to order 5
        NovikovSeries resid = sub(mul(a, invert(a, 5)), NovikovSeries::one());
        bool ok = true;
        for (const NovTerm& t : resid.terms())
            ok = ok && (t.exp >= 5 || std::abs(t.coeff.to_complex()) <= 1e-9);
        CHECK(ok);
    }
}

TEST_CASE("exp is multiplicative") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        NovikovSeries a = random_series(rng, false, true);
        NovikovSeries b = random_series(rng, false, true);
        NovikovSeries lhs = exp_novikov(add(a, b), 5);
        NovikovSeries rhs = mul(exp_novikov(a, 5), exp_novikov(b, 5));
        // strictly positive valuations keep everything rational; compare below
        // the common cap since a fully cancelling sum stays exact on one side
        ExtRat cap = min(lhs.truncation(), rhs.truncation());
        CHECK(truncate_to(lhs, cap) == truncate_to(rhs, cap));
    }
}

TEST_CASE("json round trip") {
    NovikovSeries s = truncate_to(
        add(mono(-3, 2, 1, 3), NovikovSeries::monomial(Scalar(std::complex<double>(0.25, -1)),
                                                       q(5, 2))),
        ExtRat(q(4)));
    NovikovSeries back = NovikovSeries::from_json(s.to_json());
    CHECK(back == s);
    CHECK(back.truncation() == ExtRat(q(4)));

    nlohmann::json j = s.to_json();
    CHECK(j.contains("terms"));
    CHECK(j["trunc"] == "4");
    CHECK(j["terms"][0]["exp"] == "1/3");
}

TEST_CASE("approx equality") {
    NovikovSeries a = NovikovSeries::monomial(Scalar(std::complex<double>(1.0, 0.0)), q(1, 2));
    NovikovSeries b = NovikovSeries::monomial(Scalar(std::complex<double>(1.0 + 1e-12, 0.0)), q(1, 2));
    CHECK(approx_equal(a, b, 1e-9));
    CHECK(!approx_equal(a, NovikovSeries::monomial(Scalar(std::complex<double>(1.1, 0)), q(1, 2)),
                        1e-9));
    CHECK(!approx_equal(a, NovikovSeries::monomial(Scalar(std::complex<double>(1.0, 0)), q(1, 3)),
                        1e-9));
}
