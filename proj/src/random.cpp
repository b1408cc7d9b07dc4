#include "jordan_mg/random.hpp"

namespace jmg {

Element random_element(const Algebra& algebra, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd c(static_cast<Eigen::Index>(algebra.dim()));
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = nd(rng);
  return Element(algebra, std::move(c));
}

Element random_interior(const Algebra& algebra, Rng& rng) {
  const Element y = random_element(algebra, rng);
  return jordan_product(y, y) + 0.1 * algebra.identity();
}

Element random_feasible(const Algebra& algebra, Rng& rng) {
  const Element x = random_interior(algebra, rng);
  return x / trace(x);
}

Element random_primitive_idempotent(const Algebra& algebra, Rng& rng) {
  const Spectrum s(random_element(algebra, rng));
  std::uniform_int_distribution<std::size_t> pick(0, algebra.rank() - 1);
  return s.frame(pick(rng));
}

}  // namespace jmg
