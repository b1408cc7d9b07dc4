#pragma once

// Predicates and order utilities for the cone of squares of an algebra.

#include "jordan_mg/eja.hpp"

namespace jmg {

// Membership slack, relative to 1 + |lambda_max|.
struct ConeTolerance {
  double rel_tol = 1e-9;
};

struct LambdaExtremes {
  double min;
  double max;
};

// Result of maximizing <b, x> over the trace-one slice of the cone.
struct LinearMaximizer {
  double value;
  Element argmax;
};

bool in_cone(const Element& x, ConeTolerance tol = {});
bool in_interior(const Element& x, ConeTolerance tol = {});
// x <= y in the cone order, i.e. y - x is in the cone.
bool cone_leq(const Element& x, const Element& y, ConeTolerance tol = {});

LambdaExtremes lambda_extremes(const Element& x);

// The interior w with P(w) x = y. Throws DomainError unless x and y are interior.
Element scaling_point(const Element& x, const Element& y, ConeTolerance tol = {});

// value = lambda_max(b); argmax is the top frame element of b.
LinearMaximizer simplex_lin_max(const Element& b);

}  // namespace jmg
