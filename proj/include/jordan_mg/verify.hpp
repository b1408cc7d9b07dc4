#pragma once

// Numerical audits of the inequalities behind the GMG analysis. Each check
// reports a signed margin (distance to violation, in lambda_min / trace
// units) together with the scale it should be compared against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jordan_mg/instance.hpp"

namespace jmg {

struct CheckOptions {
  // Pass iff margin >= -tol * scale.
  double tol = 1e-8;
};

struct CheckResult {
  bool passed = false;
  double margin = 0.0;
  double scale = 1.0;
  std::optional<std::string> witness;  // input echo on failure

  double relative_margin() const { return margin / scale; }
};

// tr(exp x o exp y) - tr(exp(x + y)) >= 0.
CheckResult check_golden_thompson(const Element& x, const Element& y, CheckOptions opt = {});

// y >= x > 0  =>  ln y >= ln x and y^{-1} <= x^{-1}. Margin is the smaller
// lambda_min of the two differences. Throws DomainError if x is not interior
// or y - x is not in the cone.
CheckResult check_ln_monotone(const Element& x, const Element& y, CheckOptions opt = {});

// lambda_min(sum b_i^2 v_i - P(sum a_i b_i v_i) (sum a_i^2 v_i)^{-1}) >= 0.
// Throws DomainError unless sum a_i^2 v_i is interior.
CheckResult check_cs_inequality(const std::vector<Element>& v, const std::vector<double>& alpha,
                                const std::vector<double>& beta, CheckOptions opt = {});

// ln <grad F(x), x_star> - (F(x_star) - F(x)) >= 0 for feasible x_star.
CheckResult check_growth_bound(const ProblemInstance& instance, const Element& x, const Element& x_star,
                               CheckOptions opt = {});

// <lam ln grad F(x) + (1 - lam) ln grad F(y) - ln grad F(lam x + (1 - lam) y), u> >= 0.
// Throws std::invalid_argument unless u o u = u and ||u|| = 1.
CheckResult check_grad_log_convexity(const ProblemInstance& instance, const Element& x, const Element& y,
                                     double lambda, const Element& u, CheckOptions opt = {});

// margin = 1e-5 - (relative error of grad F against central differences
// along every storage coordinate).
CheckResult check_grad_fd(const ProblemInstance& instance, const Element& x);

// Suite drivers behind `jordan-mg verify`.
struct CheckSummary {
  std::string name;
  std::size_t total = 0;
  std::size_t passed = 0;
  double worst_relative_margin = 0.0;
  std::optional<std::string> first_failure;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckSummary> checks;

  bool all_passed() const;
};

std::vector<std::string> suite_names();  // eja, cone, objectives, inequalities, all
// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::size_t seeds, std::uint64_t base_seed = 1);

}  // namespace jmg
