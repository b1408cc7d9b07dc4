#pragma once

#include <cmath>

#include <doctest.h>

#include "jordan_mg/eja.hpp"

namespace jmg::test {

inline Element vec(const Algebra& a, std::initializer_list<double> c) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index k = 0;
  for (double x : c) v[k++] = x;
  return Element(a, v);
}

inline Element mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return sym_from_matrix(m);
}

inline double dist(const Element& x, const Element& y) { return (x.coords() - y.coords()).cwiseAbs().maxCoeff(); }

}  // namespace jmg::test
