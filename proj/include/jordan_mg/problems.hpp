#pragma once

// Builders, random generators and file I/O for the four shipped problem
// families:
//   pet       Rn(n) simplex, A z = P z, f = sum_j (Y_j / sum Y) ln w_j
//   doptimal  Rn(m) simplex, A x = sum_i x_i a_i a_i^T, f = n^{-1} ln det
//   qst_real  Sym(n) simplex, A X = (a_j^T X a_j)_j, f = sum_j (n_j / N) ln w_j
//   bqp       Sym(n) simplex, A X = (a_i^T X a_i)_i with a_i the columns of
//             A^{1/2}, f = 2 ln sum_i w_i^{1/2}
//
// Instance files are JSON objects
//   { "kind": "pet" | "doptimal" | "qst_real" | "bqp",
//     "dims": { ... },
//     "data": { ... },
//     "seed": <unsigned, optional> }
// with every matrix stored as a flat row-major array:
//   pet       dims {m, n}  data {"P": m*n, "Y": m}
//   doptimal  dims {m, n}  data {"points": m*n}          row i = a_i
//   qst_real  dims {m, n}  data {"vectors": m*n, "counts": m}  row j = a_j
//   bqp       dims {n}     data {"A": n*n}
// Unknown fields are rejected.

#include <cstdint>
#include <filesystem>
#include <string>

#include "jordan_mg/instance.hpp"

namespace jmg {

// Bins with zero counts carry zero weight and are dropped.
ProblemInstance build_pet(const Eigen::MatrixXd& P, const Eigen::VectorXd& Y);
ProblemInstance build_doptimal(const Eigen::MatrixXd& points);
// Measurements with zero counts are dropped.
ProblemInstance build_qst_real(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& counts);
ProblemInstance build_bqp_relax(const Eigen::MatrixXd& A);

ProblemInstance build_instance(const InstanceSpec& spec);

// m is ignored for bqp.
struct Dims {
  std::size_t m = 0;
  std::size_t n = 0;
};

// Deterministic for a fixed (kind, dims, seed). Throws std::invalid_argument
// on invalid dims.
InstanceSpec random_spec(ProblemKind kind, Dims dims, std::uint64_t seed);
ProblemInstance random_instance(ProblemKind kind, Dims dims, std::uint64_t seed);

// Strict JSON I/O. Malformed files raise SchemaError naming the field.
ProblemInstance parse_instance(const std::string& text, const std::string& origin = "<string>");
std::string serialize_instance(const InstanceSpec& spec);
ProblemInstance load_instance(const std::filesystem::path& path);
// Requires an instance produced by build_instance / random_instance / load_instance.
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

}  // namespace jmg
