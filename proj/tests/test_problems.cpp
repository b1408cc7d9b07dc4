#include <filesystem>
#include <fstream>
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

Eigen::MatrixXd m_(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Eigen::VectorXd v_(std::initializer_list<double> c) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(c.size()));
  Eigen::Index k = 0;
  for (double x : c) out[k++] = x;
  return out;
}

std::string schema_message(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "(no error)";
}

SolveReport tight_solve(const ProblemInstance& inst, double tol = 1e-10, std::size_t iters = 200000) {
  SolverConfig cfg;
  cfg.max_iters = iters;
  cfg.gap_tol = tol;
  cfg.log_every = iters;
  return solve(inst, cfg);
}

}  // namespace

TEST_CASE("pet closed forms") {
  const ProblemInstance one = build_pet(m_({{1}}), v_({5}));
  CHECK(one.value(vec(Algebra::rn(1), {1})) == 0.0);

  // m = 1: F(z) = ln(a^T z), maximized at the largest a_i.
  const Eigen::MatrixXd a = m_({{0.2, 0.7, 0.4}});
  const ProblemInstance lin = build_pet(a, v_({3}));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    const Element z = random_feasible(Algebra::rn(3), rng);
    CHECK(lin.value(z) == doctest::Approx(std::log(a.row(0).dot(z.coords()))).epsilon(1e-15));
  }
  const SolveReport rep = tight_solve(lin, 1e-9, 1000000);
  CHECK(rep.termination.kind == TerminationKind::GapTolReached);
  CHECK(rep.best_value == doctest::Approx(std::log(0.7)).epsilon(1e-8));
  CHECK(rep.best_iterate[1] > 1.0 - 1e-6);
}

TEST_CASE("d-optimal with n = 1 reduces to the m = 1 pet form") {
  const Eigen::MatrixXd pts = m_({{1.5}, {-0.5}, {2.0}});
  const ProblemInstance dopt = build_doptimal(pts);
  const ProblemInstance pet = build_pet(m_({{2.25, 0.25, 4.0}}), v_({1}));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) {
    const Element x = random_feasible(Algebra::rn(3), rng);
    CHECK(dopt.value(x) == doctest::Approx(pet.value(x)).epsilon(1e-14));
  }
}

TEST_CASE("d-optimal on the two basis vectors") {
  const ProblemInstance inst = build_doptimal(Eigen::MatrixXd::Identity(2, 2));
  double best = -1e300, arg = -1;
  for (int i = 1; i < 10000; ++i) {
    const double t = i / 10000.0;
    const double f = inst.value(vec(Algebra::rn(2), {t, 1 - t}));
    if (f > best) best = f, arg = t;
  }
  CHECK(arg == doctest::Approx(0.5));
  CHECK(best == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(certified_gap(inst, vec(Algebra::rn(2), {0.75, 0.25})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("random d-optimal satisfies Kiefer-Wolfowitz at termination") {
  const ProblemInstance inst = random_instance(ProblemKind::DOptimal, {30, 4}, 3);
  const SolveReport rep = tight_solve(inst, 1e-5);
  REQUIRE(rep.termination.kind == TerminationKind::GapTolReached);
  const Element& x = rep.best_iterate;
  const auto& d = std::get<DOptimalData>(inst.spec()->data);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
  for (Eigen::Index i = 0; i < 30; ++i) M += x[static_cast<std::size_t>(i)] * d.points.row(i).transpose() * d.points.row(i);
  const Eigen::MatrixXd Minv = M.inverse();
  double kw = 0;
  for (Eigen::Index i = 0; i < 30; ++i) kw = std::max(kw, double(d.points.row(i) * Minv * d.points.row(i).transpose()));
  CHECK(kw <= 4 * (1 + 1e-4));
}

TEST_CASE("qst closed forms") {
  // n = 1: the simplex is a single point.
  const ProblemInstance single = build_qst_real(m_({{std::sqrt(0.3)}, {std::sqrt(0.7)}}), v_({2, 5}));
  CHECK(single.value(Algebra::sym(1).identity()) ==
        doctest::Approx(2.0 / 7 * std::log(0.3) + 5.0 / 7 * std::log(0.7)).epsilon(1e-14));

  // Standard basis: diagonal reduction to pet with P = I.
  const ProblemInstance diag = build_qst_real(Eigen::MatrixXd::Identity(2, 2), v_({3, 1}));
  const SolveReport rep = tight_solve(diag);
  CHECK(rep.termination.kind == TerminationKind::GapTolReached);
  CHECK(dist(rep.best_iterate, mat({{0.75, 0}, {0, 0.25}})) < 1e-6);

  const ProblemInstance rnd = random_instance(ProblemKind::QstReal, {9, 3}, 4);
  SolverConfig cfg;
  cfg.max_iters = 100000;
  cfg.gap_tol = 1e-5;
  CHECK(solve(rnd, cfg).termination.kind == TerminationKind::GapTolReached);
}

TEST_CASE("bqp closed forms") {
  const ProblemInstance id = build_bqp_relax(Eigen::MatrixXd::Identity(2, 2));
  double best = -1e300, arg = -1;
  for (int i = 1; i < 10000; ++i) {
    const double t = i / 10000.0;
    const double f = id.value(mat({{t, 0}, {0, 1 - t}}));
    if (f > best) best = f, arg = t;
  }
  CHECK(arg == doctest::Approx(0.5));
  CHECK(best == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const SolveReport rep = tight_solve(id);
  CHECK(rep.best_value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(dist(rep.best_iterate, mat({{0.5, 0}, {0, 0.5}})) < 1e-4);

  const ProblemInstance one = build_bqp_relax(m_({{4}}));
  CHECK(one.value(Algebra::sym(1).identity()) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));

  // Coarse independent bound: F(X) <= ln(n tr(A X)) <= ln(n lambda_max(A)).
  const ProblemInstance rnd = random_instance(ProblemKind::Bqp, {0, 3}, 5);
  const auto& A = std::get<BqpData>(rnd.spec()->data).A;
  const double coarse = std::log(3 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().maxCoeff());
  const SolveReport r = tight_solve(rnd, 1e-8);
  CHECK(r.averaged_value <= coarse);
  CHECK(r.best_value + r.best_cert_gap <= coarse + 1e-12);
  CHECK(r.best_value + r.best_cert_gap >= r.averaged_value);
}

TEST_CASE("builder preconditions") {
  CHECK_THROWS_WITH_AS(build_pet(m_({{1, 0}, {0, 0}}), v_({1, 1})), doctest::Contains("row 1"), InvalidInstance);
  CHECK_THROWS_WITH_AS(build_pet(m_({{1, 0}, {1, 0}}), v_({1, 1})), doctest::Contains("column 1"), InvalidInstance);
  CHECK_THROWS_AS(build_pet(m_({{1, -1}, {1, 2}}), v_({1, 1})), InvalidInstance);
  CHECK_THROWS_WITH_AS(build_pet(m_({{1, 1}}), v_({0})), doctest::Contains("all counts are zero"), InvalidInstance);
  CHECK_THROWS_AS(build_pet(m_({{1, 1}}), v_({1, 2})), InvalidInstance);
  CHECK_THROWS_AS(build_doptimal(m_({{1, 2}, {2, 4}})), InvalidInstance);
  CHECK_THROWS_AS(build_qst_real(m_({{1, 0}, {0, 0.9}}), v_({1, 1})), InvalidInstance);
  CHECK_THROWS_AS(build_bqp_relax(m_({{1, 2}, {2, 1}})), InvalidInstance);

  // Zero-count bins are dropped.
  const ProblemInstance pet = build_pet(m_({{1, 0}, {0, 1}, {1, 1}}), v_({2, 2, 0}));
  CHECK(pet.map().target().dim() == 2);
}

TEST_CASE("random instances are deterministic and valid") {
  const std::vector<std::pair<ProblemKind, Dims>> kinds = {
      {ProblemKind::Pet, {12, 7}}, {ProblemKind::DOptimal, {10, 3}}, {ProblemKind::QstReal, {8, 3}}, {ProblemKind::Bqp, {0, 4}}};
  for (const auto& [kind, dims] : kinds) {
    CAPTURE(kind_tag(kind));
    std::vector<std::string> texts;
    for (std::uint64_t seed : {1, 2, 3}) {
      const ProblemInstance inst = random_instance(kind, dims, seed);
      const Element c = inst.center();
      CHECK(inner(inst.gradient(c), c) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(in_interior(inst.gradient(c)));
      CHECK(in_interior(inst.map().apply(c)));
      const std::string text = serialize_instance(*inst.spec());
      CHECK(text == serialize_instance(random_spec(kind, dims, seed)));
      texts.push_back(text);
    }
    CHECK(texts[0] != texts[1]);
    CHECK(texts[1] != texts[2]);
  }
  CHECK_THROWS_AS(random_spec(ProblemKind::DOptimal, {2, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_spec(ProblemKind::Pet, {0, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_spec(ProblemKind::Bqp, {5, 0}, 1), std::invalid_argument);
}

TEST_CASE("instance files") {
  const ProblemInstance tiny = parse_instance(R"({"kind": "pet", "dims": {"m": 2, "n": 3},
      "data": {"P": [0.5, 0.2, 0.1, 0.5, 0.8, 0.9], "Y": [10, 4]}})");
  CHECK(tiny.cone_algebra() == Algebra::rn(3));
  CHECK(tiny.map().target() == Algebra::rn(2));

  const std::string zero_col = schema_message(R"({"kind": "pet", "dims": {"m": 2, "n": 2},
      "data": {"P": [1, 0, 1, 0], "Y": [1, 1]}})");
  CHECK(zero_col.rfind("data.P", 0) == 0);
  CHECK(zero_col.find("column 1") != std::string::npos);

  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 1, "n": 1}, "data": {"P": [1], "Y": [1]}, "extra": 1})")
            .rfind("extra", 0) == 0);
  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 1, "n": 1}, "data": {"P": [1], "Y": [1], "Z": 2}})")
            .rfind("data.Z", 0) == 0);
  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 1, "n": 1}, "data": {"P": [1]}})").rfind("data.Y", 0) == 0);
  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 2, "n": 1}, "data": {"P": [1], "Y": [1, 1]}})")
            .rfind("data.P", 0) == 0);
  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 1, "n": -1}, "data": {"P": [1], "Y": [1]}})")
            .rfind("dims.n", 0) == 0);
  CHECK(schema_message(R"({"kind": "lp", "dims": {}, "data": {}})").rfind("kind", 0) == 0);
  CHECK(schema_message(R"({"kind": "pet", "dims": {"m": 1, "n": 1}, "data": {"P": ["x"], "Y": [1]}})")
            .rfind("data.P[0]", 0) == 0);
  CHECK(schema_message("{ not json").find("line") != std::string::npos);
  const std::string complex_msg = schema_message(R"({"kind": "qst_real", "dims": {"m": 1, "n": 1},
      "data": {"vectors": [1], "vectors_imag": [0], "counts": [1]}})");
  CHECK(complex_msg.find("real-vector restriction") != std::string::npos);
  CHECK(schema_message(R"({"kind": "qst_real", "dims": {"m": 1, "n": 1},
      "data": {"vectors": [[1, 0]], "counts": [1]}})").find("real-vector restriction") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "jmg_test_io";
  std::filesystem::create_directories(dir);
  for (ProblemKind kind : {ProblemKind::Pet, ProblemKind::DOptimal, ProblemKind::QstReal, ProblemKind::Bqp}) {
    const ProblemInstance inst = random_instance(kind, {9, 3}, 42);
    const auto path = dir / (kind_tag(kind) + ".json");
    save_instance(inst, path);
    const ProblemInstance back = load_instance(path);
    CHECK(serialize_instance(*back.spec()) == serialize_instance(*inst.spec()));
    CHECK(back.spec()->seed == std::optional<std::uint64_t>(42));
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          const T& e = std::get<T>(inst.spec()->data);
          if constexpr (std::is_same_v<T, DOptimalData>) CHECK(d.points == e.points);
          if constexpr (std::is_same_v<T, PetData>) CHECK((d.P == e.P && d.Y == e.Y));
          if constexpr (std::is_same_v<T, QstData>) CHECK((d.vectors == e.vectors && d.counts == e.counts));
          if constexpr (std::is_same_v<T, BqpData>) CHECK(d.A == e.A);
        },
        back.spec()->data);
  }
  std::filesystem::remove_all(dir);

  const ProblemInstance fixture = load_instance(std::string(JMG_FIXTURE_DIR) + "/tiny_pet.json");
  CHECK(fixture.cone_algebra().rank() == 4);
  CHECK_THROWS(load_instance(std::string(JMG_FIXTURE_DIR) + "/does_not_exist.json"));
}
