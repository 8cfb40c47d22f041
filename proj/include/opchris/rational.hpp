#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace opchris {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p" or "p/q", canonical (reduced, q > 0).
std::string rat_str(const Rational& r);
Rational rat_parse(const std::string& s);

// Asserts r is an integer that fits in long long.
long long rat_ll(const Rational& r);

}  // namespace opchris
