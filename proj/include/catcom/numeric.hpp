#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <type_traits>

namespace catcom {

/// Exact rational used by the relation, semilattice and table backends.
using Rational = mpq_class;

/// Numeric policy knobs. Exact backends ignore all of them.
struct Tolerances {
  double num = 1e-9;   ///< entry-wise comparison of floating values
  double rank = 1e-8;  ///< singular-value cutoff, relative to the largest one
  double cone = 1e-7;  ///< residual accepted by nonnegative least squares
};

template <class T>
struct NumberTraits;

template <>
struct NumberTraits<Rational> {
  static constexpr bool exact = true;

  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static bool nonneg(const Rational& x, double /*tol*/) { return sgn(x) >= 0; }
  static bool positive(const Rational& x, double /*tol*/) { return sgn(x) > 0; }
  static bool equal(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double error(const Rational& a, const Rational& b) { return a == b ? 0.0 : std::abs(Rational(a - b).get_d()); }
  static std::string to_string(const Rational& x) { return x.get_str(); }

  /// Binary doubles are rationals; the conversion is exact.
  static Rational from_double(double v) { return Rational(v); }
  static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct NumberTraits<double> {
  static constexpr bool exact = false;

  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static bool nonneg(double x, double tol) { return x >= -tol; }
  static bool positive(double x, double tol) { return x > tol; }
  static bool equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double to_double(double x) { return x; }
  static double error(double a, double b) { return std::abs(a - b); }
  static std::string to_string(double x);
  static double from_double(double v) { return v; }
  static double abs(double x) { return std::abs(x); }
};

inline std::string NumberTraits<double>::to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
inline constexpr bool is_exact_v = NumberTraits<T>::exact;

/// 64-bit FNV-1a; stable across platforms, used to derive per-object seeds.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace catcom
