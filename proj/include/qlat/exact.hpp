#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qlat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 50 decimal digits (~166 bits), comfortably more than 50 bits beyond double.
using Real = boost::multiprecision::cpp_bin_float_50;

inline constexpr int kRealPrecisionBits = 166;

BigInt ipow(const BigInt& base, unsigned exp);
BigInt ipow(long long base, unsigned exp);

/// "n/d" or "n" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);
/// Scientific notation with `digits` significant digits.
std::string to_string(const Real& x, int digits = 30);

/// Largest integer <= r.
BigInt floor(const Rational& r);

/// Exact dyadic value of a binary float.
Rational to_rational(const Real& x);
Real to_real(const Rational& r);

/// Exact rational strictly above (resp. below) x by a relative margin of 2^-120,
/// used to compare exact quantities against rounded real bounds one-sidedly.
Rational upper_guard(const Real& x);
Rational lower_guard(const Real& x);

} // namespace qlat
