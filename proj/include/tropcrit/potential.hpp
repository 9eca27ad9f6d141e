#pragma once

#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tropcrit/novikov.hpp"
#include "tropcrit/polytope.hpp"

namespace tropcrit {

using Expo = std::vector<long long>; // monomial exponent c, y^c = prod y_j^{c_j}

// graded lex, highest first: total degree desc, then lex desc
struct GradedLexDesc {
    bool operator()(const Expo& a, const Expo& b) const;
};

// Laurent polynomial in y_1..y_n with Novikov-series coefficients.
// Zero coefficients are never stored; insertion merges and cancels eagerly.
class LaurentPoly {
public:
    explicit LaurentPoly(int n) : n_(n) {}

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, NovikovSeries, GradedLexDesc>& terms() const { return terms_; }

    void add_term(const Expo& c, const NovikovSeries& a);

    std::string str() const; // e.g. "y1 + y2 + T^1*y1^-1*y2^-1"
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

    bool operator==(const LaurentPoly& o) const;

private:
    int n_;
    std::map<Expo, NovikovSeries, GradedLexDesc> terms_;
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_neg(const LaurentPoly& a);
LaurentPoly lp_scalar_mul(const Scalar& c, const LaurentPoly& a);

// Subtorus given by an integer n x r matrix K of full column rank; A is the
// derived (n-r) x n annihilator basis whose rows weight the critical system.
struct SubtorusSpec {
    IntMat k;
    IntMat a;
    int n = 0;
    int r = 0;

    SubtorusSpec(int n_, IntMat k_); // rank_deficient when rank K < r
};

struct CorrectionTerm {
    Scalar r;       // coefficient
    Expo e;         // one entry per facet, sum e > 0
    Rational rho;   // extra energy, > 0
};

// one monomial per facet: y^{v_i} T^{-lambda_i}
LaurentPoly leading_potential(const Polytope& p);

// adds r_j * y^{sum_i e_i v_i} * T^{rho_j - sum_i e_i lambda_i} per correction
LaurentPoly with_corrections(const LaurentPoly& po, const Polytope& p,
                             const std::vector<CorrectionTerm>& corrections);

// (c, a) -> (c, c_j * a)
LaurentPoly log_derivative(const LaurentPoly& f, int j);

// f_i = sum_j a_{i,j} (y_j d/dy_j PO) for each annihilator row i
std::vector<LaurentPoly> critical_system(const LaurentPoly& po, const SubtorusSpec& s);

// substitute series for the variables; zero_coordinate when some y_j == 0.
// Negative powers are computed via invert at a working order chosen so the
// result's truncation is at least `order` whenever possible.
NovikovSeries eval(const LaurentPoly& f, const std::vector<NovikovSeries>& y,
                   const Rational& order);

} // namespace tropcrit
