#include <random>

#include "helpers.hpp"
#include "jordan_mg/problems.hpp"
#include "jordan_mg/random.hpp"
#include "jordan_mg/solver.hpp"
#include "jordan_mg/verify.hpp"

using namespace jmg;
using jmg::test::mat;
using jmg::test::vec;

TEST_CASE("golden-thompson") {
  std::mt19937_64 rng(1);
  for (const Algebra& a : {Algebra::rn(3), Algebra::spin(4), Algebra::sym(3)}) {
    const Element x = random_element(a, rng);
    const CheckResult same = check_golden_thompson(x, x);
    CHECK(same.passed);
    CHECK(std::abs(same.relative_margin()) <= 1e-12);
    const CheckResult zero = check_golden_thompson(x, Element::zero(a));
    CHECK(std::abs(zero.relative_margin()) <= 1e-12);
  }
  // Non-commuting Sym(2): strict slack.
  const CheckResult strict = check_golden_thompson(mat({{1, 0}, {0, -1}}), mat({{0, 1}, {1, 0}}));
  CHECK(strict.passed);
  CHECK(strict.margin > 1e-3);
  // Direct matrix oracle for the same pair.
  const double e = std::exp(1.0), s = std::sqrt(2.0);
  const double lhs = e + 1 / e;  // tr(exp(x) exp(y)) = tr(diag(e, 1/e) [[ch, sh], [sh, ch]]) = (e + 1/e) cosh 1
  CHECK(strict.margin == doctest::Approx(lhs * std::cosh(1.0) - 2 * std::cosh(s)).epsilon(1e-12));
}

TEST_CASE("ln monotone") {
  const CheckResult same = check_ln_monotone(mat({{2, 0.5}, {0.5, 1}}), mat({{2, 0.5}, {0.5, 1}}));
  CHECK(same.passed);
  CHECK(std::abs(same.margin) <= 1e-14);

  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    const Element x = random_interior(Algebra::sym(3), rng);
    Eigen::Vector3d z(nd(rng), nd(rng), nd(rng));
    const Element y = x + sym_from_matrix(z * z.transpose());
    CHECK(check_ln_monotone(x, y).passed);
  }
  CHECK_THROWS_AS(check_ln_monotone(mat({{1, 0}, {0, 0}}), mat({{2, 0}, {0, 1}})), DomainError);
  CHECK_THROWS_AS(check_ln_monotone(mat({{1, 0}, {0, 1}}), mat({{2, 0}, {0, 0.5}})), DomainError);
}

TEST_CASE("cauchy-schwarz") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    std::vector<Element> v;
    std::vector<double> al, be;
    for (int i = 0; i < 4; ++i) {
      Eigen::Vector3d z(nd(rng), nd(rng), nd(rng));
      v.push_back(sym_from_matrix(z * z.transpose() + 0.1 * Eigen::Matrix3d::Identity()));
      al.push_back(nd(rng));
      be.push_back(nd(rng));
    }
    CHECK(check_cs_inequality(v, al, be).passed);
  }
  const CheckResult single = check_cs_inequality({mat({{2, 1}, {1, 3}})}, {0.7}, {-1.3});
  CHECK(single.passed);
  CHECK(std::abs(single.relative_margin()) <= 1e-9);
  CHECK_THROWS_AS(check_cs_inequality({mat({{1, 0}, {0, 1}})}, {0.0}, {1.0}), DomainError);
  CHECK_THROWS_AS(check_cs_inequality({mat({{1, 0}, {0, 1}})}, {1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("growth bound") {
  const ProblemInstance dopt = random_instance(ProblemKind::DOptimal, {12, 3}, 4);
  const Element c = dopt.center();
  const CheckResult self = check_growth_bound(dopt, c, c);
  CHECK(std::abs(self.margin) <= 1e-12);

  const ReferenceOptimum ref = reference_optimum(dopt, 100000, 1e-9);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const Element x = random_feasible(dopt.cone_algebra(), rng);
    CHECK(check_growth_bound(dopt, x, ref.best_iterate).passed);
  }
}

TEST_CASE("gradient log-convexity") {
  std::mt19937_64 rng(5);
  for (ProblemKind kind : {ProblemKind::Pet, ProblemKind::DOptimal, ProblemKind::QstReal, ProblemKind::Bqp}) {
    const ProblemInstance inst = random_instance(kind, {9, 3}, 6);
    const Algebra& a = inst.cone_algebra();
    for (int k = 0; k < 20; ++k) {
      const Element x = random_feasible(a, rng), y = random_feasible(a, rng);
      const Element u = random_primitive_idempotent(a, rng);
      CHECK(check_grad_log_convexity(inst, x, y, 0.3, u).passed);
      for (double lam : {0.0, 1.0}) CHECK(std::abs(check_grad_log_convexity(inst, x, y, lam, u).margin) <= 1e-12);
      CHECK(std::abs(check_grad_log_convexity(inst, x, x, 0.6, u).margin) <= 1e-12);
    }
    const Element x = inst.center();
    CHECK_THROWS_AS(check_grad_log_convexity(inst, x, x, 0.5, 2.0 * random_primitive_idempotent(a, rng)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_grad_log_convexity(inst, x, x, 1.5, random_primitive_idempotent(a, rng)),
                    std::invalid_argument);
  }
}

TEST_CASE("gradient finite differences") {
  std::mt19937_64 rng(6);
  for (ProblemKind kind : {ProblemKind::Pet, ProblemKind::DOptimal, ProblemKind::QstReal, ProblemKind::Bqp}) {
    const ProblemInstance inst = random_instance(kind, {9, 3}, 7);
    for (int k = 0; k < 3; ++k) CHECK(check_grad_fd(inst, random_feasible(inst.cone_algebra(), rng)).passed);
  }
}

TEST_CASE("suites") {
  CHECK(suite_names() == std::vector<std::string>{"eja", "cone", "objectives", "inequalities", "all"});
  CHECK_THROWS_AS(run_suite("bogus", 1), std::invalid_argument);
  for (const std::string& s : {"eja", "cone", "objectives", "inequalities"}) {
    const SuiteReport rep = run_suite(s, 20);
    CAPTURE(s);
    CHECK(rep.all_passed());
    CHECK(!rep.checks.empty());
    for (const auto& c : rep.checks) CHECK(c.total > 0);
  }
  // Same seeds, same report.
  const SuiteReport a = run_suite("cone", 5, 3), b = run_suite("cone", 5, 3);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].worst_relative_margin == b.checks[k].worst_relative_margin);
}
