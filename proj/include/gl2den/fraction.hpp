#pragma once

#include <boost/rational.hpp>

#include <string>

namespace gl2den {

/// Exact reduced fraction; every density in this library is one of these.
using Fraction = boost::rational<long long>;

/// "3/4", or just "1" when the denominator is 1.
std::string to_string(const Fraction& q);

/// Parses "a/b" or "a".
Fraction parse_fraction(const std::string& text);

}  // namespace gl2den
