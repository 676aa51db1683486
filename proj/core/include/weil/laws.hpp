#pragma once

#include <cstddef>
#include <cstdint>

#include "weil/algebra.hpp"
#include "weil/expr.hpp"
#include "weil/morphism.hpp"
#include "weil/random.hpp"
#include "weil/report.hpp"

namespace weil {

/// A random proper presentation with at most three variables and at most 30
/// quotient monomials: monomial and binomial relations without constant
/// terms, plus the power m^k.
WeilPresentation random_presentation(Rng& rng);

/// Ring axioms, the augmentation homomorphism and nilpotency of the maximal
/// ideal, exactly, on `triples` random (a, b, c).
SuiteReport check_ring_laws(const WeilAlgebra& w, std::size_t triples, std::uint64_t seed);

/// psi and phi are ring maps, composition acts as composite application,
/// identities are neutral, and phi (x) psi acts blockwise on a (x) b.
/// `phi` : W1 -> W2 and `psi` : W2 -> W3.
SuiteReport check_morphism_laws(const WeilMorphism& phi, const WeilMorphism& psi, std::size_t samples,
                                std::uint64_t seed);

/// a (x) b is bilinear and multiplicative, the unit goes to the unit, and
/// the pair bookkeeping round-trips.
SuiteReport check_tensor_laws(const WeilAlgebra& w1, const WeilAlgebra& w2, std::size_t samples,
                              std::uint64_t seed);

/// (g o f) (x) W = (g (x) W) o (f (x) W) and id (x) W = id at random points
/// of W^arity(f), exactly. Transcendental outputs are evaluated only at
/// points whose image has zero augmentation, where exact series exist.
SuiteReport check_lift_functoriality(const WeilAlgebra& w, const SmoothMap& f, const SmoothMap& g,
                                     std::size_t samples, std::uint64_t seed);

/// Equivalence mod I on planted perturbations of f: adding ideal elements
/// keeps the class, adding a surviving monomial changes it, and the
/// relation is reflexive and symmetric.
SuiteReport check_equiv_laws(const WeilAlgebra& w, const SmoothMap& f, std::size_t samples, std::uint64_t seed);

/// Jet lifts through Q[t]/(t^(k+1)) against formal derivatives of a
/// polynomial in one variable, exactly, at `samples` rational base points.
SuiteReport check_polynomial_derivatives(const Polynomial& p, unsigned order, std::size_t samples,
                                         std::uint64_t seed);

}  // namespace weil
