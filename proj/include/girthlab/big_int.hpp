#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace girthlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// Natural logarithm of a positive big integer without overflowing a double.
double log_big(const BigInt& v);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace girthlab
