#pragma once

// Working scalar type. The digit count is fixed at configure time
// (NOPAIR_PRECISION_DIGITS); 34 maps onto IEEE binary128 through libquadmath.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#ifndef NOPAIR_PRECISION_DIGITS
#define NOPAIR_PRECISION_DIGITS 34
#endif

#if NOPAIR_PRECISION_DIGITS == 34
#include <boost/multiprecision/float128.hpp>
#else
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

#include <boost/math/constants/constants.hpp>

namespace nopair {

#if NOPAIR_PRECISION_DIGITS == 34
using HighReal = boost::multiprecision::float128;
#else
using HighReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<NOPAIR_PRECISION_DIGITS>,
    boost::multiprecision::et_off>;
#endif

/// Nominal decimal digits of HighReal (34 for binary128).
inline constexpr int kPrecisionDigits = NOPAIR_PRECISION_DIGITS;

/// Digits needed for a lossless decimal round trip.
inline constexpr int kRoundTripDigits = std::numeric_limits<HighReal>::max_digits10;

inline HighReal epsilon() { return std::numeric_limits<HighReal>::epsilon(); }

inline HighReal pi() { return boost::math::constants::pi<HighReal>(); }

/// Parses a decimal literal at full working precision. Throws
/// std::invalid_argument on anything that is not a complete number.
HighReal parse_real(std::string_view text);

/// Scientific notation with `digits` significant digits (default: lossless).
std::string to_string(const HighReal& value, int digits = kRoundTripDigits);

/// Fixed notation with `decimals` digits after the point.
std::string to_fixed(const HighReal& value, int decimals);

}  // namespace nopair
