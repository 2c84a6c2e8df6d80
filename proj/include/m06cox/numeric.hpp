// Exact arithmetic aliases used throughout the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

namespace m06cox {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int int_max(const Int& a, const Int& b) { return a < b ? b : a; }
inline Int int_min(const Int& a, const Int& b) { return a < b ? a : b; }

/// Clamp at zero: negative multiplicities impose no vanishing conditions.
inline Int clamp0(const Int& v) { return v < 0 ? Int(0) : v; }

inline long to_long(const Int& v) {
  static const Int lo = (std::numeric_limits<long>::min)();
  static const Int hi = (std::numeric_limits<long>::max)();
  if (v < lo || v > hi) throw std::overflow_error("integer too large for an index: " + v.str());
  return v.convert_to<long>();
}

inline std::string rat_str(const Rat& r) {
  return r.str();
}

/// binomial(n, k) over exact integers; 0 for out-of-range k.
inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace m06cox
