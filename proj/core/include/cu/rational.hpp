#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace cu {

// Exact rational arithmetic for frequency-derived probabilities. The
// quadratic and rival measures are computed in this type so that ties are
// decided exactly; entropy-based measures go through double.
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// Accepts integers ("3"), plain decimals ("0.4", "-1.25") and explicit
// fractions ("2/5").
Rational parse_rational(std::string_view text);

// Exact textual form accepted back by parse_rational: integer, finite
// decimal when the denominator is of the form 2^a*5^b, "p/q" otherwise.
std::string format_rational(const Rational& r);

}  // namespace cu
