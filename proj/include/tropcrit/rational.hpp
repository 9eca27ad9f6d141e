#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "tropcrit/errors.hpp"

namespace tropcrit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational; // always reduced, denominator > 0

// "p" or "p/q"; q > 0 after normalization
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r); // "p" when q==1, else "p/q"

// Rational extended with +infinity; used for valuations and truncations.
struct ExtRat {
    bool inf = false;
    Rational r = 0;

    ExtRat() = default;
    ExtRat(Rational v) : inf(false), r(std::move(v)) {} // NOLINT: implicit by design
    ExtRat(int v) : inf(false), r(v) {}
    static ExtRat infinity() { ExtRat e; e.inf = true; return e; }

    bool operator==(const ExtRat& o) const { return inf == o.inf && (inf || r == o.r); }
    bool operator!=(const ExtRat& o) const { return !(*this == o); }
    bool operator<(const ExtRat& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return r < o.r;
    }
    bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
    bool operator>(const ExtRat& o) const { return o < *this; }
    bool operator>=(const ExtRat& o) const { return o <= *this; }

    ExtRat operator+(const ExtRat& o) const {
        if (inf || o.inf) return infinity();
        return ExtRat(Rational(r + o.r));
    }
};

inline ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }
std::string extrat_to_string(const ExtRat& e); // "inf" for infinity
ExtRat parse_extrat(const std::string& s);

using QVec = std::vector<Rational>;

} // namespace tropcrit
