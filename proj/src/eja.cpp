#include "jordan_mg/eja.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace jmg {

struct Algebra::Node {
  AlgebraKind kind;
  std::size_t order;
  std::size_t rank;
  std::size_t dim;
  std::string name;
  std::vector<Algebra> blocks;  // empty for simple algebras
  std::vector<std::size_t> offsets;
  Eigen::VectorXd metric;
  Eigen::VectorXd identity;
};

namespace {

std::size_t packed_size(std::size_t n) { return n * (n + 1) / 2; }

}  // namespace

Algebra Algebra::rn(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rn: dimension must be positive");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::Rn;
  node->order = n;
  node->rank = n;
  node->dim = n;
  node->name = "Rn(" + std::to_string(n) + ")";
  node->metric = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  node->identity = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  return Algebra(std::move(node));
}

Algebra Algebra::spin(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("Spin: dimension must be at least 2");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::Spin;
  node->order = dim;
  node->rank = 2;
  node->dim = dim;
  node->name = "Spin(" + std::to_string(dim) + ")";
  node->metric = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), 2.0);
  node->identity = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  node->identity[0] = 1.0;
  return Algebra(std::move(node));
}

Algebra Algebra::sym(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Sym: order must be positive");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::Sym;
  node->order = n;
  node->rank = n;
  node->dim = packed_size(n);
  node->name = "Sym(" + std::to_string(n) + ")";
  node->metric.resize(static_cast<Eigen::Index>(node->dim));
  node->identity = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(node->dim));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++k) {
      node->metric[k] = (i == j) ? 1.0 : 2.0;
      if (i == j) node->identity[k] = 1.0;
    }
  }
  return Algebra(std::move(node));
}

Algebra Algebra::direct_sum(std::vector<Algebra> parts) {
  if (parts.empty()) throw std::invalid_argument("DirectSum: needs at least one component");
  std::vector<Algebra> flat;
  for (auto& p : parts) {
    if (p.kind() == AlgebraKind::DirectSum) {
      for (std::size_t i = 0; i < p.num_blocks(); ++i) flat.push_back(p.block(i));
    } else {
      flat.push_back(std::move(p));
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::DirectSum;
  node->order = flat.size();
  node->rank = 0;
  node->dim = 0;
  std::ostringstream name;
  name << "DirectSum(";
  for (std::size_t i = 0; i < flat.size(); ++i) {
    node->offsets.push_back(node->dim);
    node->rank += flat[i].rank();
    node->dim += flat[i].dim();
    name << (i ? "," : "") << flat[i].name();
  }
  name << ")";
  node->name = name.str();
  node->metric.resize(static_cast<Eigen::Index>(node->dim));
  node->identity.resize(static_cast<Eigen::Index>(node->dim));
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const auto off = static_cast<Eigen::Index>(node->offsets[i]);
    const auto len = static_cast<Eigen::Index>(flat[i].dim());
    node->metric.segment(off, len) = flat[i].metric();
    node->identity.segment(off, len) = flat[i].node_->identity;
  }
  node->blocks = std::move(flat);
  return Algebra(std::move(node));
}

AlgebraKind Algebra::kind() const { return node_->kind; }
std::size_t Algebra::order() const { return node_->order; }
std::size_t Algebra::rank() const { return node_->rank; }
std::size_t Algebra::dim() const { return node_->dim; }
const std::string& Algebra::name() const { return node_->name; }
const Eigen::VectorXd& Algebra::metric() const { return node_->metric; }

std::size_t Algebra::num_blocks() const {
  return node_->kind == AlgebraKind::DirectSum ? node_->blocks.size() : 1;
}

const Algebra& Algebra::block(std::size_t i) const {
  if (node_->kind != AlgebraKind::DirectSum) {
    if (i != 0) throw std::out_of_range("block index out of range");
    return *this;
  }
  return node_->blocks.at(i);
}

std::size_t Algebra::block_offset(std::size_t i) const {
  if (node_->kind != AlgebraKind::DirectSum) {
    if (i != 0) throw std::out_of_range("block index out of range");
    return 0;
  }
  return node_->offsets.at(i);
}

Element Algebra::identity() const { return Element(*this, node_->identity); }

bool Algebra::operator==(const Algebra& other) const {
  return node_ == other.node_ || node_->name == other.node_->name;
}

// ---------------------------------------------------------------------------

Element::Element(Algebra algebra, Eigen::VectorXd coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (static_cast<std::size_t>(coords_.size()) != algebra_.dim()) {
    throw std::invalid_argument(algebra_.name() + ": expected " + std::to_string(algebra_.dim()) +
                                " coordinates, got " + std::to_string(coords_.size()));
  }
  if (!coords_.allFinite()) throw DomainError(algebra_.name() + ": non-finite coordinate");
}

Element Element::zero(const Algebra& algebra) {
  return Element(algebra, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(algebra.dim())));
}

Element Element::unit(const Algebra& algebra, std::size_t k) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(algebra.dim()));
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return Element(algebra, std::move(v));
}

Element Element::block(std::size_t i) const {
  const Algebra& b = algebra_.block(i);
  return Element(b, coords_.segment(static_cast<Eigen::Index>(algebra_.block_offset(i)),
                                    static_cast<Eigen::Index>(b.dim())));
}

void require_same_algebra(const Element& x, const Element& y, const char* op) {
  if (x.algebra() != y.algebra()) {
    throw AlgebraMismatch(std::string(op) + ": " + x.algebra().name() + " vs " + y.algebra().name());
  }
}

Element operator+(const Element& x, const Element& y) {
  require_same_algebra(x, y, "add");
  return Element(x.algebra(), x.coords() + y.coords());
}

Element operator-(const Element& x, const Element& y) {
  require_same_algebra(x, y, "subtract");
  return Element(x.algebra(), x.coords() - y.coords());
}

Element operator-(const Element& x) { return Element(x.algebra(), -x.coords()); }
Element operator*(double a, const Element& x) { return Element(x.algebra(), a * x.coords()); }
Element operator*(const Element& x, double a) { return a * x; }
Element operator/(const Element& x, double a) { return Element(x.algebra(), x.coords() / a); }

Element assemble(const Algebra& algebra, const std::vector<Element>& blocks) {
  if (blocks.size() != algebra.num_blocks()) {
    throw std::invalid_argument("assemble: expected " + std::to_string(algebra.num_blocks()) + " blocks");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(algebra.dim()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].algebra() != algebra.block(i)) {
      throw AlgebraMismatch("assemble: block " + std::to_string(i) + " is " + blocks[i].algebra().name());
    }
    v.segment(static_cast<Eigen::Index>(algebra.block_offset(i)),
              static_cast<Eigen::Index>(blocks[i].size())) = blocks[i].coords();
  }
  return Element(algebra, std::move(v));
}

// ---------------------------------------------------------------------------

Eigen::VectorXd pack_sym(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  Eigen::VectorXd v(n * (n + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) v[k++] = 0.5 * (m(i, j) + m(j, i));
  return v;
}

Eigen::MatrixXd unpack_sym(const Eigen::Ref<const Eigen::VectorXd>& packed, std::size_t order) {
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::MatrixXd m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      m(i, j) = packed[k];
      m(j, i) = packed[k];
      ++k;
    }
  }
  return m;
}

Element sym_from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("sym_from_matrix: matrix is not square");
  return Element(Algebra::sym(static_cast<std::size_t>(m.rows())), pack_sym(m));
}

Eigen::MatrixXd sym_to_matrix(const Element& x) {
  if (x.algebra().kind() != AlgebraKind::Sym) {
    throw AlgebraMismatch("sym_to_matrix: " + x.algebra().name() + " is not a Sym algebra");
  }
  return unpack_sym(x.coords(), x.algebra().order());
}

// ---------------------------------------------------------------------------

namespace {

void product_block(const Algebra& b, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> out) {
  switch (b.kind()) {
    case AlgebraKind::Rn:
      out = x.cwiseProduct(y);
      break;
    case AlgebraKind::Spin: {
      const auto tail = x.size() - 1;
      out[0] = x.dot(y);
      out.tail(tail) = x[0] * y.tail(tail) + y[0] * x.tail(tail);
      break;
    }
    case AlgebraKind::Sym: {
      const Eigen::MatrixXd xm = unpack_sym(x, b.order());
      const Eigen::MatrixXd ym = unpack_sym(y, b.order());
      const Eigen::MatrixXd xy = xm * ym;
      out = pack_sym(xy);  // pack_sym symmetrizes: (XY + YX)/2
      break;
    }
    case AlgebraKind::DirectSum:
      throw std::logic_error("product_block on a direct sum");
  }
}

}  // namespace

Element jordan_product(const Element& x, const Element& y) {
  require_same_algebra(x, y, "jordan_product");
  const Algebra& a = x.algebra();
  Eigen::VectorXd out(static_cast<Eigen::Index>(a.dim()));
  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    const auto off = static_cast<Eigen::Index>(a.block_offset(i));
    const auto len = static_cast<Eigen::Index>(a.block(i).dim());
    product_block(a.block(i), x.coords().segment(off, len), y.coords().segment(off, len),
                  out.segment(off, len));
  }
  return Element(a, std::move(out));
}

double inner(const Element& x, const Element& y) {
  require_same_algebra(x, y, "inner");
  return (x.coords().cwiseProduct(x.algebra().metric())).dot(y.coords());
}

double norm(const Element& x) { return std::sqrt(inner(x, x)); }

double trace(const Element& x) {
  const Algebra& a = x.algebra();
  double t = 0.0;
  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    const Algebra& b = a.block(i);
    const auto off = static_cast<Eigen::Index>(a.block_offset(i));
    switch (b.kind()) {
      case AlgebraKind::Rn:
        t += x.coords().segment(off, static_cast<Eigen::Index>(b.dim())).sum();
        break;
      case AlgebraKind::Spin:
        t += 2.0 * x.coords()[off];
        break;
      case AlgebraKind::Sym: {
        const auto n = static_cast<Eigen::Index>(b.order());
        Eigen::Index k = off;
        for (Eigen::Index r = 0; r < n; ++r) {
          t += x.coords()[k];
          k += n - r;
        }
        break;
      }
      case AlgebraKind::DirectSum:
        throw std::logic_error("nested direct sum");
    }
  }
  return t;
}

double det(const Element& x) {
  const Eigen::VectorXd lambda = eigenvalues(x);
  return lambda.prod();
}

Element lin_rep_apply(const Element& x, const Element& y) { return jordan_product(x, y); }

Element quad_rep_apply(const Element& x, const Element& y) {
  require_same_algebra(x, y, "quad_rep_apply");
  const Element xy = jordan_product(x, y);
  const Element xx = jordan_product(x, x);
  return 2.0 * jordan_product(x, xy) - jordan_product(xx, y);
}

}  // namespace jmg
