#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include "weil/rational.hpp"

namespace weil {

/// A structure constant of a Weil algebra, cached in both scalar modes.
struct StructureCoefficient {
  Rational exact;
  double approx = 0.0;
  bool unit = false;

  explicit StructureCoefficient(const Rational& q) : exact(q), approx(q.get_d()), unit(q == 1) {}
};

/// Customization point describing a coefficient ring for Weil elements.
///
/// Specializations exist for Rational (exact mode), double (real mode) and,
/// in element.hpp and cahiers/base_poly.hpp, for nested Weil elements and
/// base-variable polynomials. The innermost scalar is `base_type`; primitives
/// are expanded around a `base_type` value.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  using base_type = Rational;
  static constexpr bool exact = true;

  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational from_rational(const Rational&, const Rational& q) { return q; }
  static Rational from_base(const Rational&, const Rational& b) { return b; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational scale(const Rational& x, const StructureCoefficient& c) { return x * c.exact; }
  static Rational scale(const Rational& x, const Rational& q) { return x * q; }
  static Rational mul_base(const Rational& x, const Rational& b) { return x * b; }
  static const Rational& base_value(const Rational& x) { return x; }
  static unsigned nil_bound(const Rational&) { return 1; }
  static std::optional<Rational> as_rational(const Rational& x) { return x; }
  static bool close(const Rational& a, const Rational& b, double, double) { return a == b; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
  static bool is_atomic(const Rational&) { return true; }
};

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

/// |a - b| <= max(abs_tol, rel_tol * max(|a|, |b|)).
inline bool close_doubles(double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(abs_tol, rel_tol * scale);
}

template <>
struct scalar_traits<double> {
  using base_type = double;
  static constexpr bool exact = false;

  static double zero_like(double) { return 0.0; }
  static double from_rational(double, const Rational& q) { return q.get_d(); }
  static double from_base(double, double b) { return b; }
  static bool is_zero(double x) { return x == 0.0; }
  static double scale(double x, const StructureCoefficient& c) { return x * c.approx; }
  static double scale(double x, const Rational& q) { return x * q.get_d(); }
  static double mul_base(double x, double b) { return x * b; }
  static double base_value(double x) { return x; }
  static unsigned nil_bound(double) { return 1; }
  static std::optional<Rational> as_rational(double) { return std::nullopt; }
  static bool close(double a, double b, double rel_tol, double abs_tol) {
    return close_doubles(a, b, rel_tol, abs_tol);
  }
  static std::string to_string(double x) { return format_double(x); }
  static bool is_atomic(double) { return true; }
};

/// Real-mode comparison tolerances.
struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
};

}  // namespace weil
