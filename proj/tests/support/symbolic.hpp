#pragma once

// Test-only oracles. Nothing here goes through the library's jet
// propagation: derivatives are taken symbolically on the expression tree and
// evaluated with plain libm calls.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "weil/expr.hpp"

namespace oracle {

/// d/dt_i of e, by the textbook rules, lightly simplified.
weil::Expr differentiate(const weil::Expr& e, std::size_t variable = 0);

/// The j-th derivative in t0.
weil::Expr nth_derivative(const weil::Expr& e, unsigned j);

/// Direct double evaluation; NaN outside the domain.
double eval(const weil::Expr& e, std::span<const double> inputs);
double eval1(const weil::Expr& e, double t);

/// (f(a + h) - f(a - h)) / 2h.
double central_difference(const weil::Expr& e, double a, double h = 1e-5);

/// Relative closeness with an absolute floor.
bool close(double a, double b, double rel, double abs = 1e-12);

/// Single-variable expressions of every flavour the lift must handle:
/// polynomials, rational functions, and compositions of sin, cos, exp, log
/// and sqrt. Each comes with a base point inside its domain.
struct CorpusEntry {
  std::string text;
  double base;
};
const std::vector<CorpusEntry>& corpus();

}  // namespace oracle
