#include "weil/jet.hpp"

namespace weil {

namespace detail {

Rational closed_value(const Expr& e) { return evaluate_scalar<Rational>(e, {}); }

}  // namespace detail

namespace {

[[noreturn]] void not_exact(Primitive p, const std::string& at) {
  throw ScalarModeError(std::string(primitive_name(p)) + " at " + at + " has no exact rational expansion");
}

void check_domain(Primitive p, double r, unsigned order) {
  if (p == Primitive::Log && !(r > 0))
    throw DomainError("log is undefined at " + format_double(r));
  if (p == Primitive::Sqrt) {
    if (r < 0) throw DomainError("sqrt is undefined at " + format_double(r));
    if (r == 0 && order > 1) throw DomainError("sqrt is not differentiable at 0");
  }
}

/// binom(1/2, j) for j < order.
std::vector<Rational> half_binomials(unsigned order) {
  std::vector<Rational> b(order);
  Rational c(1);
  for (unsigned j = 0; j < order; ++j) {
    b[j] = c;
    c = c * (Rational(1, 2) - j) / (j + 1);
  }
  return b;
}

}  // namespace

std::vector<Rational> primitive_series(Primitive p, const Rational& r, unsigned order) {
  check_domain(p, r.get_d(), order);
  std::vector<Rational> c(order);
  switch (p) {
    case Primitive::Exp:
      if (r != 0) not_exact(p, r.get_str());
      for (unsigned j = 0; j < order; ++j) c[j] = 1 / factorial(j);
      return c;
    case Primitive::Sin:
      if (r != 0) not_exact(p, r.get_str());
      for (unsigned j = 1; j < order; j += 2) c[j] = Rational((j / 2) % 2 ? -1 : 1) / factorial(j);
      return c;
    case Primitive::Cos:
      if (r != 0) not_exact(p, r.get_str());
      for (unsigned j = 0; j < order; j += 2) c[j] = Rational((j / 2) % 2 ? -1 : 1) / factorial(j);
      return c;
    case Primitive::Log:
      if (r != 1) not_exact(p, r.get_str());
      for (unsigned j = 1; j < order; ++j) c[j] = fraction(j % 2 ? 1 : -1, j);
      return c;
    case Primitive::Sqrt: {
      if (r == 0) return c;
      Rational s;
      if (!exact_sqrt(r, s)) not_exact(p, r.get_str());
      auto b = half_binomials(order);
      Rational rpow(1);
      for (unsigned j = 0; j < order; ++j) {
        c[j] = s * b[j] / rpow;
        rpow *= r;
      }
      return c;
    }
  }
  return c;
}

std::vector<double> primitive_series(Primitive p, double r, unsigned order) {
  check_domain(p, r, order);
  std::vector<double> c(order);
  double fact = 1.0;
  switch (p) {
    case Primitive::Exp: {
      const double e = std::exp(r);
      for (unsigned j = 0; j < order; ++j) {
        if (j) fact *= j;
        c[j] = e / fact;
      }
      return c;
    }
    case Primitive::Sin:
    case Primitive::Cos: {
      const double s = std::sin(r), co = std::cos(r);
      // Derivatives cycle with period four.
      const double sin_cycle[4] = {s, co, -s, -co};
      const double cos_cycle[4] = {co, -s, -co, s};
      const double* cycle = p == Primitive::Sin ? sin_cycle : cos_cycle;
      for (unsigned j = 0; j < order; ++j) {
        if (j) fact *= j;
        c[j] = cycle[j % 4] / fact;
      }
      return c;
    }
    case Primitive::Log: {
      c[0] = std::log(r);
      double rpow = 1.0;
      for (unsigned j = 1; j < order; ++j) {
        rpow *= r;
        c[j] = (j % 2 ? 1.0 : -1.0) / (j * rpow);
      }
      return c;
    }
    case Primitive::Sqrt: {
      if (r == 0) return c;
      const double s = std::sqrt(r);
      auto b = half_binomials(order);
      double rpow = 1.0;
      for (unsigned j = 0; j < order; ++j) {
        c[j] = s * b[j].get_d() / rpow;
        rpow *= r;
      }
      return c;
    }
  }
  return c;
}

std::vector<Rational> reciprocal_series(const Rational& r, unsigned order) {
  if (r == 0) throw DomainError("division by zero");
  std::vector<Rational> c(order);
  Rational inv = 1 / r;
  Rational term = inv;
  for (unsigned j = 0; j < order; ++j) {
    c[j] = term;
    term *= -inv;
  }
  return c;
}

std::vector<double> reciprocal_series(double r, unsigned order) {
  if (r == 0) throw DomainError("division by zero");
  std::vector<double> c(order);
  double inv = 1.0 / r;
  double term = inv;
  for (unsigned j = 0; j < order; ++j) {
    c[j] = term;
    term *= -inv;
  }
  return c;
}

}  // namespace weil
