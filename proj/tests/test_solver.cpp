#include <random>

#include "helpers.hpp"
#include "jordan_mg/cone.hpp"
#include "jordan_mg/problems.hpp"
#include "jordan_mg/random.hpp"
#include "jordan_mg/solver.hpp"

using namespace jmg;
using jmg::test::dist;
using jmg::test::mat;
using jmg::test::vec;

namespace {

Eigen::MatrixXd row(std::initializer_list<double> c) {
  Eigen::MatrixXd m(1, static_cast<Eigen::Index>(c.size()));
  Eigen::Index k = 0;
  for (double x : c) m(0, k++) = x;
  return m;
}

ProblemInstance pet_single_bin() { return build_pet(row({1, 2}), Eigen::VectorXd::Constant(1, 4.0)); }

}  // namespace

TEST_CASE("gmg_step examples") {
  const ProblemInstance pet = pet_single_bin();
  const Algebra r2 = Algebra::rn(2);
  const StepResult s = gmg_step(pet, vec(r2, {0.5, 0.5}));
  CHECK(dist(pet.gradient(vec(r2, {0.5, 0.5})), vec(r2, {2.0 / 3, 4.0 / 3})) < 1e-15);
  CHECK(dist(s.x_next, vec(r2, {1.0 / 3, 2.0 / 3})) < 1e-15);
  CHECK(s.trace_pre == doctest::Approx(1.0).epsilon(1e-15));

  // The optimum of P = I with uniform counts is a fixed point.
  const ProblemInstance uni = build_pet(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Constant(3, 2.0));
  const Element c = uni.center();
  CHECK(dist(gmg_step(uni, c).x_next, c) < 1e-15);
  CHECK(certified_gap(uni, c) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(gmg_step(pet, vec(r2, {1, 0})), DomainError);
}

TEST_CASE("trace before normalization is at most one, strictly on non-commuting Sym(2)") {
  bool strict = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ProblemInstance inst = random_instance(ProblemKind::Bqp, {0, 2}, seed);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
      const Element x = random_feasible(inst.cone_algebra(), rng);
      const StepResult s = gmg_step(inst, x);
      CHECK(s.trace_pre <= 1 + 1e-12);
      CHECK(trace(s.x_next) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(in_interior(s.x_next));
      const Eigen::MatrixXd X = sym_to_matrix(x), G = sym_to_matrix(inst.gradient(x));
      if ((X * G - G * X).norm() > 1e-3 && s.trace_pre < 1 - 1e-6) strict = true;
    }
  }
  CHECK(strict);
}

TEST_CASE("certified gap") {
  const ProblemInstance dopt = build_doptimal(Eigen::MatrixXd::Identity(2, 2));
  CHECK(certified_gap(dopt, vec(Algebra::rn(2), {0.75, 0.25})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(certified_gap(dopt, vec(Algebra::rn(2), {0.5, 0.5})) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(certified_gap(dopt, vec(Algebra::rn(2), {1, 0})), DomainError);
}

TEST_CASE("solve matches the closed-form power iteration on a single bin") {
  const ProblemInstance pet = pet_single_bin();
  SolverConfig cfg;
  cfg.max_iters = 40;
  cfg.gap_tol = 1e-300;
  cfg.x0 = vec(Algebra::rn(2), {0.5, 0.5});
  std::vector<Element> xs;
  const SolveReport rep = solve(pet, cfg, [&](const StepObservation& o) { xs.push_back(o.x); });
  REQUIRE(xs.size() == 41);
  double prev = -1e300;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    // x^t proportional to (1, 2^t).
    const double p = std::pow(2.0, static_cast<double>(t));
    CHECK(dist(xs[t], vec(Algebra::rn(2), {1 / (1 + p), p / (1 + p)})) < 1e-14);
    const double f = pet.value(xs[t]);
    CHECK(f >= prev - 1e-15);
    prev = f;
  }
  CHECK(rep.termination.kind == TerminationKind::MaxIters);
  CHECK(rep.best_cert_gap < 1e-12);
  CHECK(rep.records.size() == 41);
  for (std::size_t k = 1; k < rep.records.size(); ++k) CHECK(rep.records[k].t == rep.records[k - 1].t + 1);
}

TEST_CASE("degenerate and invalid configurations") {
  const ProblemInstance pet = pet_single_bin();
  SolverConfig cfg;
  cfg.max_iters = 0;
  const SolveReport rep = solve(pet, cfg);
  CHECK(rep.records.size() == 1);
  CHECK(rep.records[0].t == 0);
  CHECK(rep.termination.kind == TerminationKind::MaxIters);
  CHECK(dist(rep.best_iterate, pet.center()) == 0.0);

  SolverConfig bad;
  bad.gap_tol = -1;
  CHECK_THROWS_AS(validate_config(pet, bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.log_every = 0;
  CHECK_THROWS_AS(validate_config(pet, bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.x0 = vec(Algebra::rn(2), {0.5, 0.6});
  CHECK_THROWS_AS(validate_config(pet, bad), std::invalid_argument);
  bad.x0 = vec(Algebra::rn(2), {1.0, 0.0});
  CHECK_THROWS_AS(validate_config(pet, bad), std::invalid_argument);
  bad.x0 = vec(Algebra::rn(3), {0.2, 0.3, 0.5});
  CHECK_THROWS(validate_config(pet, bad));
}

TEST_CASE("solves reach their certificates") {
  SolverConfig cfg;
  cfg.max_iters = 200000;
  cfg.log_every = 1000;

  cfg.gap_tol = 1e-6;
  const ProblemInstance pet = random_instance(ProblemKind::Pet, {10, 5}, 1);
  const SolveReport p = solve(pet, cfg);
  CHECK(p.termination.kind == TerminationKind::GapTolReached);
  CHECK(std::min(p.best_cert_gap, p.averaged_cert_gap) <= 1e-6);

  cfg.gap_tol = 1e-5;
  const ProblemInstance qst = random_instance(ProblemKind::QstReal, {9, 3}, 2);
  const SolveReport q = solve(qst, cfg);
  CHECK(q.termination.kind == TerminationKind::GapTolReached);
  CHECK(q.max_trace_pre <= 1 + 1e-9);

  for (const auto& r : q.records) {
    CHECK(std::isfinite(r.objective_value));
    CHECK(r.cert_gap >= -1e-12);
    CHECK(r.trace_pre_normalization <= 1 + 1e-9);
  }
}

TEST_CASE("F is nondecreasing along the iteration") {
  for (ProblemKind kind : {ProblemKind::Pet, ProblemKind::DOptimal, ProblemKind::QstReal, ProblemKind::Bqp}) {
    const ProblemInstance inst = random_instance(kind, {12, 4}, 9);
    SolverConfig cfg;
    cfg.max_iters = 300;
    cfg.gap_tol = 1e-300;
    const SolveReport rep = solve(inst, cfg);
    for (std::size_t k = 1; k < rep.records.size(); ++k) {
      CHECK(rep.records[k].objective_value >= rep.records[k - 1].objective_value - 1e-12);
      // Certificate bounds from below the distance to the best value seen.
      CHECK(rep.records[k - 1].objective_value + rep.records[k - 1].cert_gap >= rep.best_value - 1e-12);
    }
  }
}

TEST_CASE("solve is deterministic") {
  const ProblemInstance inst = random_instance(ProblemKind::QstReal, {8, 3}, 5);
  SolverConfig cfg;
  cfg.max_iters = 500;
  const SolveReport a = solve(inst, cfg), b = solve(inst, cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].objective_value == b.records[k].objective_value);
    CHECK(a.records[k].cert_gap == b.records[k].cert_gap);
  }
  CHECK(a.final_iterate.coords() == b.final_iterate.coords());
}

TEST_CASE("reference optimum and averaged iterates") {
  const ProblemInstance dopt = build_doptimal(Eigen::MatrixXd::Identity(2, 2));
  const ReferenceOptimum ref = reference_optimum(dopt, 1000);
  CHECK(ref.uncertainty() <= 1e-11);
  CHECK(ref.value() == doctest::Approx(-std::log(2.0)).epsilon(1e-11));

  const Element x0 = vec(Algebra::rn(2), {0.9, 0.1});
  const std::vector<Element> avg = averaged_iterates(dopt, {1, 2, 50}, x0);
  CHECK(dist(avg[0], x0) == 0.0);
  const Element x1 = gmg_step(dopt, x0).x_next;
  CHECK(dist(avg[1], 0.5 * (x0 + x1)) < 1e-15);
  CHECK(dopt.value(avg[2]) <= ref.upper);
  CHECK_THROWS_AS(averaged_iterates(dopt, {0}), std::invalid_argument);
}
