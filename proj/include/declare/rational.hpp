#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace declare
{

/// Exact fraction used for supports and thresholds.
using Rational = boost::rational<std::int64_t>;

/// "p/q" with q > 0, always including the denominator ("1/1", "0/1").
std::string to_string( const Rational& r );

/// Parses "p/q", an integer, or a decimal such as "0.75" exactly.
/// Throws InvalidArgument on malformed input.
Rational parse_rational( std::string_view text );

} // namespace declare
