#pragma once

// A problem max { F(x) = f(A x) : x in C }, where C is the trace-one slice
// of the cone of squares of the source algebra.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "jordan_mg/objectives.hpp"

namespace jmg {

enum class ProblemKind { Pet, DOptimal, QstReal, Bqp };

// Raw builder inputs, kept alongside a built instance so it can be saved.
struct PetData {
  Eigen::MatrixXd P;  // m x n, row j = detection probabilities of bin j
  Eigen::VectorXd Y;  // m counts
};
struct DOptimalData {
  Eigen::MatrixXd points;  // m x n, row i = a_i
};
struct QstData {
  Eigen::MatrixXd vectors;  // m x n, row j = a_j
  Eigen::VectorXd counts;   // m
};
struct BqpData {
  Eigen::MatrixXd A;  // n x n, positive definite
};

struct InstanceSpec {
  std::variant<PetData, DOptimalData, QstData, BqpData> data;
  std::optional<std::uint64_t> seed;

  ProblemKind kind() const { return static_cast<ProblemKind>(data.index()); }
};

std::string kind_tag(ProblemKind kind);
ProblemKind parse_kind(const std::string& tag);

class ProblemInstance {
 public:
  // Validates that map.target() is the objective domain, that A(e/r) is
  // interior, that A*(e2/r2) is interior, and that <grad F(e/r), e/r> = 1.
  ProblemInstance(LinearMap map, Objective objective, std::string name, std::string provenance = {},
                  std::optional<InstanceSpec> spec = std::nullopt);

  const Algebra& cone_algebra() const { return map_.source(); }
  const LinearMap& map() const { return map_; }
  const Objective& objective() const { return objective_; }
  const std::string& name() const { return name_; }
  const std::string& provenance() const { return provenance_; }
  const std::optional<InstanceSpec>& spec() const { return spec_; }

  // e / r, the default starting point.
  Element center() const;

  double value(const Element& x) const;
  Element gradient(const Element& x) const;
  ObjectiveEval evaluate(const Element& x) const;

 private:
  LinearMap map_;
  Objective objective_;
  std::string name_;
  std::string provenance_;
  std::optional<InstanceSpec> spec_;
};

// grad F(x) = A* grad f(A x).
Element composite_grad(const ProblemInstance& instance, const Element& x);

// Problem over {x in K1 : <a, x> = 1} rewritten over C via x = P(w) z with
// w = a^{-1/2}, so that P(w) a = e.
struct StandardizedProblem {
  ProblemInstance instance;
  Element w;

  Element recover(const Element& z) const { return quad_rep_apply(w, z); }
};

// Throws DomainError if a is not in the cone interior.
StandardizedProblem standardize_affine(const LinearMap& map, const Objective& objective, const Element& a,
                                       std::string name = "standardized");

}  // namespace jmg
