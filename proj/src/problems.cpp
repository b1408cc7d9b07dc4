#include "jordan_mg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jmg {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw InvalidInstance(std::string(what) + " contains non-finite entries");
}

// Keeps the rows with positive weight; returns (kept rows, kept weights).
std::pair<Eigen::MatrixXd, Eigen::VectorXd> drop_zero_weights(const Eigen::MatrixXd& rows,
                                                             const Eigen::VectorXd& w) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (w[j] > 0.0) keep.push_back(j);
  }
  Eigen::MatrixXd r(static_cast<Eigen::Index>(keep.size()), rows.cols());
  Eigen::VectorXd v(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    r.row(static_cast<Eigen::Index>(k)) = rows.row(keep[k]);
    v[static_cast<Eigen::Index>(k)] = w[keep[k]];
  }
  return {std::move(r), std::move(v)};
}

void check_counts(const Eigen::VectorXd& counts, const char* what) {
  if (!counts.allFinite()) throw InvalidInstance(std::string(what) + " contains non-finite entries");
  for (Eigen::Index j = 0; j < counts.size(); ++j) {
    if (counts[j] < 0.0) throw InvalidInstance(std::string(what) + ": entry " + std::to_string(j) + " is negative");
  }
  if (!(counts.sum() > 0.0)) throw InvalidInstance(std::string(what) + ": all counts are zero");
}

std::string dims_label(Eigen::Index m, Eigen::Index n) { return std::to_string(m) + "x" + std::to_string(n); }

}  // namespace

ProblemInstance build_pet(const Eigen::MatrixXd& P, const Eigen::VectorXd& Y) {
  if (P.rows() == 0 || P.cols() == 0) throw InvalidInstance("P: empty matrix");
  if (Y.size() != P.rows()) {
    throw InvalidInstance("Y: length " + std::to_string(Y.size()) + " does not match the " +
                          std::to_string(P.rows()) + " rows of P");
  }
  require_finite(P, "P");
  for (Eigen::Index j = 0; j < P.rows(); ++j) {
    for (Eigen::Index i = 0; i < P.cols(); ++i) {
      if (P(j, i) < 0.0) {
        throw InvalidInstance("P: entry (" + std::to_string(j) + ", " + std::to_string(i) + ") is negative");
      }
    }
  }
  for (Eigen::Index j = 0; j < P.rows(); ++j) {
    if (!(P.row(j).maxCoeff() > 0.0)) throw InvalidInstance("P: row " + std::to_string(j) + " is zero");
  }
  for (Eigen::Index i = 0; i < P.cols(); ++i) {
    if (!(P.col(i).maxCoeff() > 0.0)) throw InvalidInstance("P: column " + std::to_string(i) + " is zero");
  }
  check_counts(Y, "Y");

  auto [rows, counts] = drop_zero_weights(P, Y);
  for (Eigen::Index i = 0; i < rows.cols(); ++i) {
    if (!(rows.col(i).maxCoeff() > 0.0)) {
      throw InvalidInstance("P: column " + std::to_string(i) + " is zero on every bin with a positive count");
    }
  }
  const Algebra k1 = Algebra::rn(static_cast<std::size_t>(P.cols()));
  std::vector<Element> c;
  c.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index j = 0; j < rows.rows(); ++j) c.emplace_back(k1, rows.row(j).transpose());
  Eigen::VectorXd weights = counts / counts.sum();
  return ProblemInstance(LinearMap::inner_product_map(k1, c), Objective::weighted_log(std::move(weights)),
                         "pet-" + dims_label(P.rows(), P.cols()), "build_pet",
                         InstanceSpec{PetData{P, Y}, std::nullopt});
}

ProblemInstance build_doptimal(const Eigen::MatrixXd& points) {
  if (points.rows() == 0 || points.cols() == 0) throw InvalidInstance("points: empty point set");
  require_finite(points, "points");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (!(points.row(i).cwiseAbs().maxCoeff() > 0.0)) {
      throw InvalidInstance("points: point " + std::to_string(i) + " is zero");
    }
  }
  const Eigen::MatrixXd gram = points.transpose() * points;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  if (!(es.eigenvalues().minCoeff() > 1e-12 * top)) {
    throw InvalidInstance("points: the points do not span R^" + std::to_string(points.cols()) +
                          " (sum a_i a_i^T is singular)");
  }
  LinearMap map = LinearMap::rank_one_assembly(points.transpose());
  Objective f = Objective::log_det_normalized(map.target());
  return ProblemInstance(std::move(map), std::move(f), "doptimal-" + dims_label(points.rows(), points.cols()),
                         "build_doptimal", InstanceSpec{DOptimalData{points}, std::nullopt});
}

ProblemInstance build_qst_real(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& counts) {
  if (vectors.rows() == 0 || vectors.cols() == 0) throw InvalidInstance("vectors: empty set");
  if (counts.size() != vectors.rows()) {
    throw InvalidInstance("counts: length " + std::to_string(counts.size()) + " does not match the " +
                          std::to_string(vectors.rows()) + " measurement vectors");
  }
  require_finite(vectors, "vectors");
  const auto n = vectors.cols();
  const Eigen::MatrixXd frame = vectors.transpose() * vectors;
  const double defect = (frame - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) {
    throw InvalidInstance("vectors: sum a_j a_j^T differs from the identity by " + std::to_string(defect));
  }
  check_counts(counts, "counts");

  auto [kept, weights] = drop_zero_weights(vectors, counts);
  const Algebra k1 = Algebra::sym(static_cast<std::size_t>(n));
  std::vector<Element> c;
  c.reserve(static_cast<std::size_t>(kept.rows()));
  for (Eigen::Index j = 0; j < kept.rows(); ++j) {
    const Eigen::VectorXd a = kept.row(j).transpose();
    c.push_back(sym_from_matrix(a * a.transpose()));
  }
  weights /= weights.sum();
  return ProblemInstance(LinearMap::inner_product_map(k1, c), Objective::weighted_log(std::move(weights)),
                         "qst_real-" + dims_label(vectors.rows(), n), "build_qst_real",
                         InstanceSpec{QstData{vectors, counts}, std::nullopt});
}

ProblemInstance build_bqp_relax(const Eigen::MatrixXd& A) {
  if (A.rows() == 0 || A.rows() != A.cols()) throw InvalidInstance("A: must be a non-empty square matrix");
  require_finite(A, "A");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff())) {
    throw InvalidInstance("A: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("A: eigen-decomposition failed");
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(es.eigenvalues().minCoeff() > 1e-12 * top)) throw InvalidInstance("A: matrix is not positive definite");
  const Eigen::MatrixXd root =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const auto n = A.rows();
  const Algebra k1 = Algebra::sym(static_cast<std::size_t>(n));
  std::vector<Element> c;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd a = root.col(i);
    c.push_back(sym_from_matrix(a * a.transpose()));
  }
  return ProblemInstance(LinearMap::inner_product_map(k1, c),
                         Objective::log_p_norm(0.5, static_cast<std::size_t>(n)),
                         "bqp-" + std::to_string(n), "build_bqp_relax", InstanceSpec{BqpData{A}, std::nullopt});
}

ProblemInstance build_instance(const InstanceSpec& spec) {
  ProblemInstance built = std::visit(
      [](const auto& d) -> ProblemInstance {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PetData>) return build_pet(d.P, d.Y);
        else if constexpr (std::is_same_v<T, DOptimalData>) return build_doptimal(d.points);
        else if constexpr (std::is_same_v<T, QstData>) return build_qst_real(d.vectors, d.counts);
        else return build_bqp_relax(d.A);
      },
      spec.data);
  std::string name = built.name();
  if (spec.seed) name += "-seed" + std::to_string(*spec.seed);
  return ProblemInstance(built.map(), built.objective(), std::move(name), built.provenance(), spec);
}

// ---------------------------------------------------------------------------
// Random generators

namespace {

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = nd(rng);
  }
  return g;
}

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& s) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

PetData random_pet(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  const auto M = static_cast<Eigen::Index>(m);
  const auto N = static_cast<Eigen::Index>(n);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Eigen::MatrixXd P(M, N);
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index i = 0; i < N; ++i) {
      double v = 0.0;
      while (!(v > 0.0)) v = ud(rng);
      P(j, i) = v;
    }
  }
  // Each voxel's detection probabilities sum to one.
  for (Eigen::Index i = 0; i < N; ++i) P.col(i) /= P.col(i).sum();

  Eigen::VectorXd x_true(N);
  for (Eigen::Index i = 0; i < N; ++i) x_true[i] = 0.1 + 0.9 * ud(rng);
  Eigen::VectorXd mean = P * x_true;
  mean *= 100.0 * static_cast<double>(m) / mean.sum();
  Eigen::VectorXd Y(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    std::poisson_distribution<long long> pd(mean[j]);
    Y[j] = static_cast<double>(pd(rng));
  }
  return {std::move(P), std::move(Y)};
}

QstData random_qst(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  const auto M = static_cast<Eigen::Index>(m);
  const auto N = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd g = gaussian(N, M, rng);
  // Columns of S^{-1/2} G form a tight frame: sum_j a_j a_j^T = I.
  const Eigen::MatrixXd frame = inverse_sqrt(g * g.transpose()) * g;
  Eigen::MatrixXd vectors = frame.transpose();

  const Eigen::MatrixXd w = gaussian(N, N, rng);
  Eigen::MatrixXd rho = w * w.transpose();
  rho /= rho.trace();
  Eigen::VectorXd prob(M);
  for (Eigen::Index j = 0; j < M; ++j) prob[j] = std::max(0.0, double(vectors.row(j) * rho * vectors.row(j).transpose()));
  prob /= prob.sum();

  // Multinomial draw by sequential binomials.
  long long remaining = 100 * static_cast<long long>(m);
  double mass = 1.0;
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(M);
  for (Eigen::Index j = 0; j < M && remaining > 0; ++j) {
    if (j == M - 1) {
      counts[j] = static_cast<double>(remaining);
      break;
    }
    const double p = mass > 0.0 ? std::clamp(prob[j] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<long long> bd(remaining, p);
    const long long k = bd(rng);
    counts[j] = static_cast<double>(k);
    remaining -= k;
    mass -= prob[j];
  }
  return {std::move(vectors), std::move(counts)};
}

}  // namespace

InstanceSpec random_spec(ProblemKind kind, Dims dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::string tag = kind_tag(kind);
  auto bad = [&](const std::string& why) { return std::invalid_argument("random " + tag + " instance: " + why); };
  switch (kind) {
    case ProblemKind::Pet:
      if (dims.m == 0 || dims.n == 0) throw bad("m and n must be positive");
      return {random_pet(dims.m, dims.n, rng), seed};
    case ProblemKind::DOptimal:
      if (dims.m == 0 || dims.n == 0) throw bad("m and n must be positive");
      if (dims.m < dims.n) throw bad("need m >= n points to span R^n");
      return {DOptimalData{gaussian(static_cast<Eigen::Index>(dims.m), static_cast<Eigen::Index>(dims.n), rng)},
              seed};
    case ProblemKind::QstReal:
      if (dims.m == 0 || dims.n == 0) throw bad("m and n must be positive");
      if (dims.m < dims.n) throw bad("need m >= n measurement vectors to span R^n");
      return {random_qst(dims.m, dims.n, rng), seed};
    case ProblemKind::Bqp: {
      if (dims.n == 0) throw bad("n must be positive");
      const auto N = static_cast<Eigen::Index>(dims.n);
      const Eigen::MatrixXd g = gaussian(N, N, rng);
      Eigen::MatrixXd A = g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(N, N);
      return {BqpData{std::move(A)}, seed};
    }
  }
  throw bad("unknown kind");
}

ProblemInstance random_instance(ProblemKind kind, Dims dims, std::uint64_t seed) {
  return build_instance(random_spec(kind, dims, seed));
}

}  // namespace jmg
