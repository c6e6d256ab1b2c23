#pragma once

#include <string>

#include "robba/padic.hpp"
#include "robba/quadext.hpp"
#include "robba/series.hpp"

namespace robba {

// Text formats (bit-exact, little-endian digit lists):
//  scalar    p^<v>*<d0>,<d1>,...@<N>   e.g. 3^1*1,2,0@3 = 3*(1+2*3) mod 3^4
//            exact zero: p^inf*0@0     big-oh zero O(p^a): p^<a>*0@0
//  rational  <num> or <num>/<den>
//  extension <scalar>+<scalar>*pi
//  series    <deg>:<coef>;<deg>:<coef>;...@<Tprec>
// Scalars always print exactly N digits (trailing zeros kept, d0 != 0).
// Series print every window coefficient with consecutive degrees; parsing
// reconstructs that window with the default tail/top contract (exact tail,
// inexact top), which is also what formatting assumes.

std::string format_scalar(const PadicScalar& s);
PadicScalar parse_scalar(const std::string& text);

std::string format_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

std::string format_quad(const QuadExtScalar& s);
QuadExtScalar parse_quad(const std::string& text);

std::string format_series(const TruncatedSeries& f);
TruncatedSeries parse_series(const std::string& text);

}  // namespace robba
