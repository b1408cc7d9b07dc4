#include "jordan_mg/cone.hpp"

#include <cmath>

namespace jmg {

namespace {

void check_tol(ConeTolerance tol) {
  if (!(tol.rel_tol > 0.0)) throw std::invalid_argument("ConeTolerance: rel_tol must be positive");
}

}  // namespace

LambdaExtremes lambda_extremes(const Element& x) {
  const Spectrum s(x);
  return {s.min(), s.max()};
}

bool in_cone(const Element& x, ConeTolerance tol) {
  check_tol(tol);
  const auto [lo, hi] = lambda_extremes(x);
  return lo >= -tol.rel_tol * (1.0 + std::abs(hi));
}

bool in_interior(const Element& x, ConeTolerance tol) {
  check_tol(tol);
  const auto [lo, hi] = lambda_extremes(x);
  return lo > tol.rel_tol * (1.0 + std::abs(hi));
}

bool cone_leq(const Element& x, const Element& y, ConeTolerance tol) {
  require_same_algebra(x, y, "cone_leq");
  return in_cone(y - x, tol);
}

Element scaling_point(const Element& x, const Element& y, ConeTolerance tol) {
  require_same_algebra(x, y, "scaling_point");
  if (!in_interior(x, tol)) throw DomainError("scaling_point: x is not in the cone interior");
  if (!in_interior(y, tol)) throw DomainError("scaling_point: y is not in the cone interior");
  const Spectrum sx(x);
  const Element x_half = sx.apply([](double l) { return std::sqrt(l); });
  const Element x_mhalf = sx.apply([](double l) { return 1.0 / std::sqrt(l); });
  const Element middle = spectral_map(quad_rep_apply(x_half, y), SpectralFunction::pow(0.5));
  return quad_rep_apply(x_mhalf, middle);
}

LinearMaximizer simplex_lin_max(const Element& b) {
  const Spectrum s(b);
  return {s.max(), s.frame(0)};
}

}  // namespace jmg
