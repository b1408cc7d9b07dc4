#pragma once

// 1-logarithmically-homogeneous concave objectives f on the interior of a
// cone, and linear maps A between algebras. Gradients are returned in the
// primal coordinates of the domain algebra (all shipped cones are self-dual).

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "jordan_mg/eja.hpp"

namespace jmg {

struct ObjectiveEval {
  double value;
  Element gradient;
};

class Objective {
 public:
  // sum_j w_j ln y_j on Rn(m); weights positive, summing to one.
  static Objective weighted_log(Eigen::VectorXd weights);
  // r^{-1} ln det y on any algebra of rank r.
  static Objective log_det_normalized(Algebra domain);
  // p^{-1} ln sum_j y_j^p on Rn(m), 0 < p < 1. Strictly positive inputs only.
  static Objective log_p_norm(double p, std::size_t m);
  // sum_i beta_i f_i; components share one domain, beta positive, summing to one.
  static Objective convex_combination(std::vector<std::pair<double, Objective>> terms);

  const Algebra& domain() const { return domain_; }
  std::string describe() const;

  double value(const Element& y) const;
  Element gradient(const Element& y) const;
  ObjectiveEval evaluate(const Element& y) const;

 private:
  struct WeightedLog {
    Eigen::VectorXd weights;
  };
  struct LogDet {};
  struct LogPNorm {
    double p;
  };
  struct Combination {
    std::vector<std::pair<double, Objective>> terms;
  };
  using Kind = std::variant<WeightedLog, LogDet, LogPNorm, Combination>;

  Objective(Algebra domain, Kind kind) : domain_(std::move(domain)), kind_(std::move(kind)) {}
  void check_domain(const Element& y) const;

  Algebra domain_;
  Kind kind_;
};

// Linear map A from a source algebra to a target algebra, with adjoint A*
// taken with respect to the trace inner products on both sides.
class LinearMap {
 public:
  // x -> (<c_j, x>)_j into Rn(m).
  static LinearMap inner_product_map(Algebra source, const std::vector<Element>& measurements);
  // x in Rn(m) -> sum_i x_i a_i a_i^T in Sym(n); points holds a_i as columns (n x m).
  static LinearMap rank_one_assembly(const Eigen::MatrixXd& points);
  // x -> inner(P(w) x); adjoint y -> P(w) inner*(y).
  static LinearMap compose_quadratic(const LinearMap& inner, Element w);

  const Algebra& source() const { return source_; }
  const Algebra& target() const { return target_; }
  std::string describe() const;

  Element apply(const Element& x) const;
  Element adjoint(const Element& y) const;

 private:
  struct InnerProducts {
    Eigen::MatrixXd measurements;  // row j: coordinates of c_j
    Eigen::MatrixXd functionals;   // row j: metric-weighted c_j, so that <c_j, x> = row . x
  };
  struct RankOne {
    Eigen::MatrixXd points;  // n x m
  };
  struct Composed {
    std::shared_ptr<const LinearMap> inner;
    Element w;
  };
  using Kind = std::variant<InnerProducts, RankOne, Composed>;

  LinearMap(Algebra source, Algebra target, Kind kind)
      : source_(std::move(source)), target_(std::move(target)), kind_(std::move(kind)) {}

  Algebra source_;
  Algebra target_;
  Kind kind_;
};

Element map_apply(const LinearMap& map, const Element& x);
Element map_adjoint(const LinearMap& map, const Element& y);

}  // namespace jmg
