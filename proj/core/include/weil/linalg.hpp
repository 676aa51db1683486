#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "weil/rational.hpp"

namespace weil {

/// Dense exact matrix, row-major as a vector of rows.
using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix identity_matrix(std::size_t n);

/// Exact Gauss-Jordan inverse; nullopt when singular or not square.
std::optional<RationalMatrix> invert(const RationalMatrix& m);

std::size_t rank(RationalMatrix m);

std::vector<Rational> apply(const RationalMatrix& m, const std::vector<Rational>& v);

/// True when every row and column holds exactly one entry equal to 1.
bool is_permutation(const RationalMatrix& m);

}  // namespace weil
