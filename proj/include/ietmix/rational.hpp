/**
 * @file rational.hpp
 * @brief Exact rational arithmetic used for all combinatorial interval data.
 *
 * Interval endpoints, lengths and renormalization matrices are kept exact so
 * that identities like the length cocycle or the Kac formula can be checked
 * with operator== instead of tolerances.  Floating point enters only when a
 * value is handed to the numeric (flow / Monte Carlo) layer.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ietmix {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Largest denominator produced when snapping a binary64 value to a rational.
inline const Int kSnapDenominator = Int(1000000000000LL);  // 10^12

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

/// Nearest rational with denominator 10^12.  `snapped` reports whether the
/// input was already exactly representable (then no rounding happened).
Rat snap_double(double x, bool* snapped = nullptr);

/**
 * Parse "p/q", "p", or a decimal string like "-0.625" into an exact rational.
 * Decimal inputs with more than 12 fractional digits are snapped to the
 * nearest multiple of 10^-12; `snapped`, if given, records that event.
 * Throws std::invalid_argument on malformed input, std::domain_error on a
 * zero denominator.
 */
Rat parse_rational(const std::string& text, bool* snapped = nullptr);

/// Render as "p/q" (or "p" when q == 1); inverse of parse_rational for exact data.
std::string rational_to_string(const Rat& q);

Int gcd_int(Int a, Int b);
Int lcm_int(const Int& a, const Int& b);

}  // namespace ietmix
