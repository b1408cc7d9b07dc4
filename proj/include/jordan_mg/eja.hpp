#pragma once

// Executable Euclidean Jordan algebras: R^n with the elementwise product,
// the Jordan spin algebra, real symmetric matrices, and direct sums of these.
//
// Storage conventions (the coordinate vector of an Element):
//   Rn(n)    x_1..x_n
//   Spin(d)  (x_0, x_1..x_{d-1}), product (x.y, x_0 y_bar + y_0 x_bar)
//   Sym(n)   packed upper triangle, row-major: X00 X01 .. X0(n-1) X11 X12 ..
//            Each off-diagonal entry is stored once.
//   DirectSum  concatenation of the component coordinate vectors.
//
// The inner product is always <x, y> = tr(x o y). In coordinates this is a
// weighted dot product: weight 1 for Rn, 2 for every Spin coordinate, and for
// Sym 1 on the diagonal and 2 off the diagonal (matrix trace inner product).
// It is never the plain dot product of packed coordinates.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jordan_mg/errors.hpp"

namespace jmg {

enum class AlgebraKind { Rn, Spin, Sym, DirectSum };

class Element;

// Immutable descriptor of an algebra. Copies share the same node.
class Algebra {
 public:
  static Algebra rn(std::size_t n);
  // Jordan spin algebra on R^dim (dim = 1 + length of the vector part), rank 2.
  static Algebra spin(std::size_t dim);
  static Algebra sym(std::size_t n);
  // Nested direct sums are flattened.
  static Algebra direct_sum(std::vector<Algebra> parts);

  AlgebraKind kind() const;
  // n for Rn(n) and Sym(n), dim for Spin(dim), number of components for DirectSum.
  std::size_t order() const;
  std::size_t rank() const;
  std::size_t dim() const;
  const std::string& name() const;

  // Simple blocks: the algebra itself unless it is a direct sum.
  std::size_t num_blocks() const;
  const Algebra& block(std::size_t i) const;
  std::size_t block_offset(std::size_t i) const;

  // Inner-product weights per coordinate.
  const Eigen::VectorXd& metric() const;
  Element identity() const;

  bool operator==(const Algebra& other) const;
  bool operator!=(const Algebra& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Algebra(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A point of an algebra. Coordinates are validated to be finite.
class Element {
 public:
  Element(Algebra algebra, Eigen::VectorXd coords);

  static Element zero(const Algebra& algebra);
  // Basis vector for storage coordinate k.
  static Element unit(const Algebra& algebra, std::size_t k);

  const Algebra& algebra() const { return algebra_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  std::size_t size() const { return static_cast<std::size_t>(coords_.size()); }
  double operator[](std::size_t k) const { return coords_[static_cast<Eigen::Index>(k)]; }

  // Block i of a direct sum, as an element of that block's algebra.
  Element block(std::size_t i) const;

 private:
  Algebra algebra_;
  Eigen::VectorXd coords_;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(double a, const Element& x);
Element operator*(const Element& x, double a);
Element operator/(const Element& x, double a);

// Throws AlgebraMismatch unless x and y live in the same algebra.
void require_same_algebra(const Element& x, const Element& y, const char* op);

Element assemble(const Algebra& direct_sum, const std::vector<Element>& blocks);

// Sym(n) packing helpers. from_matrix symmetrizes its argument.
Element sym_from_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXd sym_to_matrix(const Element& x);
Eigen::VectorXd pack_sym(const Eigen::MatrixXd& m);
Eigen::MatrixXd unpack_sym(const Eigen::Ref<const Eigen::VectorXd>& packed, std::size_t n);

Element jordan_product(const Element& x, const Element& y);
double inner(const Element& x, const Element& y);
double norm(const Element& x);
double trace(const Element& x);
double det(const Element& x);

// L(x)y = x o y.
Element lin_rep_apply(const Element& x, const Element& y);
// P(x)y = 2 x o (x o y) - x^2 o y.
Element quad_rep_apply(const Element& x, const Element& y);

// Scalar function applied through the spectral decomposition.
class SpectralFunction {
 public:
  static SpectralFunction exp();
  static SpectralFunction log();
  static SpectralFunction pow(double alpha);
  static SpectralFunction inv();

  double operator()(double lambda) const;
  // ln, inv and negative powers need every eigenvalue above the domain floor.
  bool needs_positive() const;
  // Fractional positive powers need nonnegative eigenvalues.
  bool needs_nonnegative() const;
  std::string name() const;

 private:
  enum class Tag { Exp, Log, Pow, Inv };
  SpectralFunction(Tag tag, double alpha) : tag_(tag), alpha_(alpha) {}
  Tag tag_;
  double alpha_;
};

// Eigenvalues at or below kDomainFloorRel * (1 + |lambda_max|) are treated
// as outside the open cone by ln / inv / negative powers.
inline constexpr double kDomainFloorRel = 1e-14;
double domain_floor(double lambda_max);

// Eigen-decomposition of one element, reusable for several spectral maps.
class Spectrum {
 public:
  explicit Spectrum(const Element& x);

  const Algebra& algebra() const { return algebra_; }
  // All eigenvalues, sorted descending.
  const Eigen::VectorXd& values() const { return sorted_; }
  double max() const { return sorted_[0]; }
  double min() const { return sorted_[sorted_.size() - 1]; }

  // sum_i f(lambda_i) q_i. No domain checks; see spectral_map.
  Element apply(const std::function<double(double)>& f) const;
  // Jordan frame element for sorted eigenvalue i.
  Element frame(std::size_t i) const;

 private:
  struct Block {
    AlgebraKind kind;
    std::size_t offset;
    std::size_t n;           // Rn length, Spin dim, or Sym order
    Eigen::VectorXd values;  // block-local order
    Eigen::MatrixXd vectors; // Sym eigenvectors (columns)
    Eigen::VectorXd dir;     // Spin unit direction u
  };
  struct Slot {
    std::size_t block;
    std::size_t local;
  };
  Algebra algebra_;
  std::vector<Block> blocks_;
  std::vector<Slot> order_;
  Eigen::VectorXd sorted_;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // descending
  std::vector<Element> frame;   // frame[i] pairs with eigenvalues[i]
};

SpectralDecomposition spectral_decomposition(const Element& x);
Eigen::VectorXd eigenvalues(const Element& x);

// Throws DomainError when an eigenvalue falls outside the function's domain.
Element spectral_map(const Element& x, const SpectralFunction& f);

}  // namespace jmg
