#pragma once

#include <string>

#include "tropcrit/polytope.hpp"
#include "tropcrit/potential.hpp"

namespace tropcrit {

// Moment polytopes of the built-in example gallery. Parameter ranges are
// enforced by the Polytope constructor (an out-of-range parameter makes a
// facet redundant or the interior empty, which it rejects).

// standard simplex { u1,u2 >= 0, u1+u2 <= 1 }
Polytope preset_cp2();

// simplex with the corner above u2 = 1-alpha cut off; needs 0 < alpha < 1
Polytope preset_cp2_blowup1(const Rational& alpha);

// [-1,1]^2 with the corner beyond u1+u2 = 1+alpha cut off; needs -1 < alpha < 1
Polytope preset_cp2_blowup2(const Rational& alpha);

// product of intervals [0,c] x [0,d]
Polytope preset_s2xs2(const Rational& c, const Rational& d);

// standard 3-simplex
Polytope preset_cp3();

// Build the n x r subtorus matrix K from a CLI string. Accepted forms:
//   "k1,k2,...,kn"            one column
//   "c11,..,cn1;c12,..,cn2"   several columns, semicolon-separated
//   "full"                    zero columns (r=0: the full critical system)
//   "rank1"                   the column (1,2,...,n)
//   "rank2"                   two columns (1,...,1) and (0,1,...,n-1)
// parse_error on malformed input or wrong entry count.
IntMat parse_k(const std::string& s, int n);

} // namespace tropcrit
