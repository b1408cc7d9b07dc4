#pragma once

// Seeded random elements for property tests and verification suites.

#include <random>

#include "jordan_mg/eja.hpp"

namespace jmg {

using Rng = std::mt19937_64;

// Standard-normal coordinates.
Element random_element(const Algebra& algebra, Rng& rng);
// y o y + 0.1 e for a random y: eigenvalues in [0.1, ~ lambda_max(y)^2 + 0.1].
Element random_interior(const Algebra& algebra, Rng& rng);
// Random interior point scaled to trace one (relative interior of C).
Element random_feasible(const Algebra& algebra, Rng& rng);
// A frame element of a random element, chosen uniformly among the r slots.
Element random_primitive_idempotent(const Algebra& algebra, Rng& rng);

}  // namespace jmg
