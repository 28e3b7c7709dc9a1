#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace gouq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// Parses a finite decimal such as "0.1715", "-3", "2.5e-3" into an exact
// rational. Returns nullopt on malformed input.
std::optional<Rational> parse_decimal(const std::string& s);

}  // namespace gouq
