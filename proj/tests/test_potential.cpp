#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "tropcrit/potential.hpp"
#include "tropcrit/presets.hpp"

using namespace tropcrit;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num, den); }

NovikovSeries tpow(Rational e) { return NovikovSeries::monomial(Scalar(1), std::move(e)); }

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) { return lp_add(a, lp_neg(b)); }

bool equal_up_to_sign(const LaurentPoly& a, const LaurentPoly& b) {
    return a == b || a == lp_neg(b);
}

// y1 - T*y1^-1*y2^-1, the k1 = 0 critical polynomial of the projective plane
LaurentPoly cp2_k1zero() {
    LaurentPoly f(2);
    f.add_term({1, 0}, NovikovSeries::one());
    f.add_term({-1, -1}, NovikovSeries::monomial(Scalar(-1), q(1)));
    return f;
}

} // namespace

TEST_CASE("term ordering is graded lex, highest first") {
    LaurentPoly f(2);
    f.add_term({-1, -1}, tpow(q(1)));
    f.add_term({0, 1}, NovikovSeries::one());
    f.add_term({1, 0}, NovikovSeries::one());
    std::vector<Expo> order;
    for (const auto& [c, a] : f.terms()) order.push_back(c);
    CHECK(order == std::vector<Expo>{{1, 0}, {0, 1}, {-1, -1}});
    CHECK(f.str() == "y1 + y2 + T^1*y1^-1*y2^-1");
}

TEST_CASE("insertion merges and cancels") {
    LaurentPoly f(2);
    f.add_term({1, 0}, NovikovSeries::one());
    f.add_term({1, 0}, NovikovSeries::monomial(Scalar(-1), q(0)));
    CHECK(f.is_zero());
    f.add_term({0, 1}, tpow(q(1, 2)));
    f.add_term({0, 1}, tpow(q(1, 2)));
    REQUIRE(f.terms().size() == 1);
    CHECK(f.terms().begin()->second == NovikovSeries::monomial(Scalar(2), q(1, 2)));
}

TEST_CASE("leading potential of the presets") {
    CHECK(leading_potential(preset_cp2()).str() == "y1 + y2 + T^1*y1^-1*y2^-1");
    CHECK(leading_potential(preset_s2xs2(q(1), q(2))).str() ==
          "y1 + y2 + T^1*y1^-1 + T^2*y2^-1");

    // one monomial per facet, coefficient valuation -lambda_i
    for (const Polytope& p : {preset_cp2(), preset_cp2_blowup1(q(1, 4)),
                              preset_cp2_blowup2(q(-1, 2)), preset_s2xs2(q(1), q(2)),
                              preset_cp3()}) {
        LaurentPoly po = leading_potential(p);
        REQUIRE(po.terms().size() == p.facets().size());
        for (const Facet& fc : p.facets()) {
            Expo c(fc.v.size());
            for (size_t j = 0; j < fc.v.size(); ++j)
                c[j] = static_cast<long long>(fc.v[j]);
            auto it = po.terms().find(c);
            REQUIRE(it != po.terms().end());
            CHECK(it->second.val() == ExtRat(Rational(-fc.lambda)));
            CHECK(it->second.terms().size() == 1);
        }
    }
}

TEST_CASE("corrections merge into the potential") {
    Polytope p = preset_cp2();
    LaurentPoly po = leading_potential(p);
    CHECK(with_corrections(po, p, {}) == po);

    // e = (1,1,1): exponent sum is zero, energy 1 - (0+0-1) = 2
    CorrectionTerm c{Scalar(1), {1, 1, 1}, q(1)};
    LaurentPoly fixed = with_corrections(po, p, {c});
    auto it = fixed.terms().find(Expo{0, 0});
    REQUIRE(it != fixed.terms().end());
    CHECK(it->second == tpow(q(2)));

    // opposite coefficients cancel entirely
    CorrectionTerm d{Scalar(-1), {1, 1, 1}, q(1)};
    CHECK(with_corrections(po, p, {c, d}) == po);

    CorrectionTerm bad{Scalar(1), {1, 1}, q(1)};
    CHECK_THROWS_AS(with_corrections(po, p, {bad}), length_mismatch);
}

TEST_CASE("logarithmic derivative") {
    LaurentPoly f(2);
    f.add_term({1, 0}, NovikovSeries::one());
    f.add_term({-1, -1}, tpow(q(1)));
    CHECK(lp_sub(log_derivative(f, 0), cp2_k1zero()).is_zero());

    LaurentPoly c(2);
    c.add_term({0, 0}, tpow(q(2)));
    CHECK(log_derivative(c, 0).is_zero());

    // second coordinate of the cp2 potential
    LaurentPoly po = leading_potential(preset_cp2());
    LaurentPoly expect(2);
    expect.add_term({0, 1}, NovikovSeries::one());
    expect.add_term({-1, -1}, NovikovSeries::monomial(Scalar(-1), q(1)));
    CHECK(log_derivative(po, 1) == expect);

    CHECK_THROWS_AS(log_derivative(po, 2), index_out_of_range);
}

TEST_CASE("critical system matches the worked cases") {
    LaurentPoly po = leading_potential(preset_cp2());

    // K = (1,2): -2 y1 + y2 + T/(y1 y2) up to the basis-row sign
    SubtorusSpec s12(2, {{Int(1)}, {Int(2)}});
    auto sys = critical_system(po, s12);
    REQUIRE(sys.size() == 1);
    LaurentPoly expect(2);
    expect.add_term({1, 0}, NovikovSeries::monomial(Scalar(-2), q(0)));
    expect.add_term({0, 1}, NovikovSeries::one());
    expect.add_term({-1, -1}, tpow(q(1)));
    CHECK(equal_up_to_sign(sys[0], expect));

    // K = (0,1): the k1 = 0 factor
    SubtorusSpec s01(2, {{Int(0)}, {Int(1)}});
    auto sys01 = critical_system(po, s01);
    REQUIRE(sys01.size() == 1);
    CHECK(equal_up_to_sign(sys01[0], cp2_k1zero()));

    // K = (1,1): the T-term cancels exactly
    SubtorusSpec s11(2, {{Int(1)}, {Int(1)}});
    auto sys11 = critical_system(po, s11);
    REQUIRE(sys11.size() == 1);
    CHECK(sys11[0].terms().size() == 2);
    LaurentPoly diag(2);
    diag.add_term({1, 0}, NovikovSeries::one());
    diag.add_term({0, 1}, NovikovSeries::monomial(Scalar(-1), q(0)));
    CHECK(equal_up_to_sign(sys11[0], diag));

    // saturation: K = (2,4) produces the same system as K = (1,2)
    SubtorusSpec s24(2, {{Int(2)}, {Int(4)}});
    CHECK(critical_system(po, s24)[0] == sys[0]);

    // product of spheres, K = (1,1)
    LaurentPoly pos = leading_potential(preset_s2xs2(q(1), q(2)));
    SubtorusSpec ss(2, {{Int(1)}, {Int(1)}});
    auto syss = critical_system(pos, ss);
    LaurentPoly es(2);
    es.add_term({1, 0}, NovikovSeries::monomial(Scalar(-1), q(0)));
    es.add_term({0, 1}, NovikovSeries::one());
    es.add_term({-1, 0}, tpow(q(1)));
    es.add_term({0, -1}, NovikovSeries::monomial(Scalar(-1), q(2)));
    CHECK(equal_up_to_sign(syss[0], es));

    // full torus: n independent equations
    SubtorusSpec sfull(2, {{}, {}});
    CHECK(critical_system(po, sfull).size() == 2);

    CHECK_THROWS_AS(SubtorusSpec(2, IntMat{{Int(1), Int(2)}, {Int(2), Int(4)}}),
                    rank_deficient);
}

TEST_CASE("evaluation is exact where the input is") {
    // y1^2 y2 - T vanishes identically at (T^{1/4}, T^{1/2})
    LaurentPoly f(2);
    f.add_term({2, 1}, NovikovSeries::one());
    f.add_term({0, 0}, NovikovSeries::monomial(Scalar(-1), q(1)));
    NovikovSeries r = eval(f, {tpow(q(1, 4)), tpow(q(1, 2))}, q(5));
    CHECK(r.is_zero());
    CHECK(r.truncation() == ExtRat::infinity()); // nothing was truncated away

    LaurentPoly g(2);
    g.add_term({1, 0}, NovikovSeries::one());
    g.add_term({0, 1}, NovikovSeries::one());
    CHECK(eval(g, {tpow(q(1)), NovikovSeries::monomial(Scalar(-1), q(1))}, q(5)).is_zero());

    CHECK_THROWS_AS(eval(cp2_k1zero(), {NovikovSeries::zero(), tpow(q(1))}, q(5)),
                    zero_coordinate);
}

TEST_CASE("evaluation inverts series coordinates to the requested order") {
    LaurentPoly f(2); // y1^-1
    f.add_term({-1, 0}, NovikovSeries::one());
    NovikovSeries y1 = add(NovikovSeries::one(), tpow(q(1)));
    NovikovSeries r = eval(f, {y1, NovikovSeries::one()}, q(3));
    NovikovSeries expect = NovikovSeries::make(
        {{q(0), Scalar(1)}, {q(1), Scalar(-1)}, {q(2), Scalar(1)}}, ExtRat(q(3)));
    CHECK(r == expect);

    // one more order of the geometric series when asked
    NovikovSeries r4 = eval(f, {y1, NovikovSeries::one()}, q(4));
    CHECK(r4.truncation() == ExtRat(q(4)));
    CHECK(r4.terms().size() == 4);
}

TEST_CASE("laurent json round trip") {
    LaurentPoly po = leading_potential(preset_cp2_blowup1(q(1, 4)));
    LaurentPoly back = LaurentPoly::from_json(po.to_json());
    CHECK(back == po);
    CHECK(back.nvars() == 2);
    CHECK_THROWS_AS(LaurentPoly::from_json(nlohmann::json{{"n", 2}}), parse_error);
}
