#include <algorithm>
#include <cmath>
#include <numeric>

#include "jordan_mg/eja.hpp"

namespace jmg {

SpectralFunction SpectralFunction::exp() { return {Tag::Exp, 0.0}; }
SpectralFunction SpectralFunction::log() { return {Tag::Log, 0.0}; }
SpectralFunction SpectralFunction::pow(double alpha) { return {Tag::Pow, alpha}; }
SpectralFunction SpectralFunction::inv() { return {Tag::Inv, -1.0}; }

double SpectralFunction::operator()(double lambda) const {
  switch (tag_) {
    case Tag::Exp:
      return std::exp(lambda);
    case Tag::Log:
      return std::log(lambda);
    case Tag::Pow:
      return std::pow(lambda, alpha_);
    case Tag::Inv:
      return 1.0 / lambda;
  }
  return 0.0;
}

bool SpectralFunction::needs_positive() const {
  return tag_ == Tag::Log || tag_ == Tag::Inv || (tag_ == Tag::Pow && alpha_ < 0.0);
}

bool SpectralFunction::needs_nonnegative() const {
  return tag_ == Tag::Pow && alpha_ > 0.0 && alpha_ != std::floor(alpha_);
}

std::string SpectralFunction::name() const {
  switch (tag_) {
    case Tag::Exp:
      return "exp";
    case Tag::Log:
      return "ln";
    case Tag::Pow:
      return "pow(" + std::to_string(alpha_) + ")";
    case Tag::Inv:
      return "inv";
  }
  return "?";
}

double domain_floor(double lambda_max) { return kDomainFloorRel * (1.0 + std::abs(lambda_max)); }

// ---------------------------------------------------------------------------

Spectrum::Spectrum(const Element& x) : algebra_(x.algebra()) {
  const Algebra& a = x.algebra();
  blocks_.reserve(a.num_blocks());
  for (std::size_t bi = 0; bi < a.num_blocks(); ++bi) {
    const Algebra& b = a.block(bi);
    const auto off = static_cast<Eigen::Index>(a.block_offset(bi));
    const auto len = static_cast<Eigen::Index>(b.dim());
    const auto seg = x.coords().segment(off, len);
    Block blk{b.kind(), a.block_offset(bi), b.order(), {}, {}, {}};
    switch (b.kind()) {
      case AlgebraKind::Rn:
        blk.values = seg;
        break;
      case AlgebraKind::Spin: {
        const auto tail = seg.tail(len - 1);
        const double r = tail.norm();
        blk.dir = Eigen::VectorXd::Zero(len - 1);
        if (r > 0.0) {
          blk.dir = tail / r;
        } else {
          blk.dir[0] = 1.0;
        }
        blk.values.resize(2);
        blk.values << seg[0] + r, seg[0] - r;
        break;
      }
      case AlgebraKind::Sym: {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(unpack_sym(seg, b.order()));
        if (es.info() != Eigen::Success) {
          throw NumericalError(b.name() + ": symmetric eigen-solver did not converge");
        }
        blk.values = es.eigenvalues();
        blk.vectors = es.eigenvectors();
        break;
      }
      case AlgebraKind::DirectSum:
        throw std::logic_error("nested direct sum");
    }
    for (Eigen::Index k = 0; k < blk.values.size(); ++k) {
      order_.push_back({bi, static_cast<std::size_t>(k)});
    }
    blocks_.push_back(std::move(blk));
  }
  std::stable_sort(order_.begin(), order_.end(), [this](const Slot& l, const Slot& r) {
    return blocks_[l.block].values[static_cast<Eigen::Index>(l.local)] >
           blocks_[r.block].values[static_cast<Eigen::Index>(r.local)];
  });
  sorted_.resize(static_cast<Eigen::Index>(order_.size()));
  for (std::size_t i = 0; i < order_.size(); ++i) {
    sorted_[static_cast<Eigen::Index>(i)] =
        blocks_[order_[i].block].values[static_cast<Eigen::Index>(order_[i].local)];
  }
}

Element Spectrum::apply(const std::function<double(double)>& f) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(algebra_.dim()));
  for (const Block& blk : blocks_) {
    const auto off = static_cast<Eigen::Index>(blk.offset);
    switch (blk.kind) {
      case AlgebraKind::Rn:
        for (Eigen::Index k = 0; k < blk.values.size(); ++k) out[off + k] = f(blk.values[k]);
        break;
      case AlgebraKind::Spin: {
        const double hi = f(blk.values[0]);
        const double lo = f(blk.values[1]);
        const auto tail = blk.dir.size();
        out[off] = 0.5 * (hi + lo);
        out.segment(off + 1, tail) = 0.5 * (hi - lo) * blk.dir;
        break;
      }
      case AlgebraKind::Sym: {
        Eigen::VectorXd fv(blk.values.size());
        for (Eigen::Index k = 0; k < fv.size(); ++k) fv[k] = f(blk.values[k]);
        const Eigen::MatrixXd m = blk.vectors * fv.asDiagonal() * blk.vectors.transpose();
        const auto n = static_cast<Eigen::Index>(blk.n);
        out.segment(off, n * (n + 1) / 2) = pack_sym(m);
        break;
      }
      case AlgebraKind::DirectSum:
        break;
    }
  }
  return Element(algebra_, std::move(out));
}

Element Spectrum::frame(std::size_t i) const {
  const Slot& s = order_.at(i);
  const Block& blk = blocks_[s.block];
  const auto off = static_cast<Eigen::Index>(blk.offset);
  const auto k = static_cast<Eigen::Index>(s.local);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(algebra_.dim()));
  switch (blk.kind) {
    case AlgebraKind::Rn:
      out[off + k] = 1.0;
      break;
    case AlgebraKind::Spin: {
      const double sign = (k == 0) ? 1.0 : -1.0;
      out[off] = 0.5;
      out.segment(off + 1, blk.dir.size()) = 0.5 * sign * blk.dir;
      break;
    }
    case AlgebraKind::Sym: {
      const Eigen::VectorXd v = blk.vectors.col(k);
      const auto n = static_cast<Eigen::Index>(blk.n);
      out.segment(off, n * (n + 1) / 2) = pack_sym(v * v.transpose());
      break;
    }
    case AlgebraKind::DirectSum:
      break;
  }
  return Element(algebra_, std::move(out));
}

SpectralDecomposition spectral_decomposition(const Element& x) {
  const Spectrum s(x);
  SpectralDecomposition d;
  d.eigenvalues = s.values();
  d.frame.reserve(static_cast<std::size_t>(s.values().size()));
  for (Eigen::Index i = 0; i < s.values().size(); ++i) d.frame.push_back(s.frame(static_cast<std::size_t>(i)));
  return d;
}

Eigen::VectorXd eigenvalues(const Element& x) { return Spectrum(x).values(); }

Element spectral_map(const Element& x, const SpectralFunction& f) {
  const Spectrum s(x);
  const double floor = domain_floor(s.max());
  if (f.needs_positive() && !(s.min() > floor)) {
    throw DomainError(f.name() + " of " + x.algebra().name() + " element with lambda_min = " +
                      std::to_string(s.min()) + " (not in the cone interior)");
  }
  if (f.needs_nonnegative()) {
    if (s.min() < -floor) {
      throw DomainError(f.name() + " of " + x.algebra().name() + " element with lambda_min = " +
                        std::to_string(s.min()) + " (outside the cone)");
    }
    return s.apply([&f](double l) { return f(std::max(l, 0.0)); });
  }
  return s.apply([&f](double l) { return f(l); });
}

}  // namespace jmg
