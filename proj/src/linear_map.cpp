#include "jordan_mg/objectives.hpp"

namespace jmg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

LinearMap LinearMap::inner_product_map(Algebra source, const std::vector<Element>& measurements) {
  if (measurements.empty()) throw std::invalid_argument("inner_product_map: no measurements");
  const auto m = static_cast<Eigen::Index>(measurements.size());
  const auto d = static_cast<Eigen::Index>(source.dim());
  InnerProducts ip;
  ip.measurements.resize(m, d);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Element& c = measurements[static_cast<std::size_t>(j)];
    if (c.algebra() != source) {
      throw AlgebraMismatch("inner_product_map: measurement " + std::to_string(j) + " is in " +
                            c.algebra().name() + ", expected " + source.name());
    }
    ip.measurements.row(j) = c.coords().transpose();
  }
  ip.functionals = ip.measurements * source.metric().asDiagonal();
  Algebra target = Algebra::rn(measurements.size());
  return LinearMap(std::move(source), std::move(target), std::move(ip));
}

LinearMap LinearMap::rank_one_assembly(const Eigen::MatrixXd& points) {
  if (points.rows() == 0 || points.cols() == 0) throw std::invalid_argument("rank_one_assembly: empty point set");
  return LinearMap(Algebra::rn(static_cast<std::size_t>(points.cols())),
                   Algebra::sym(static_cast<std::size_t>(points.rows())), RankOne{points});
}

LinearMap LinearMap::compose_quadratic(const LinearMap& inner, Element w) {
  if (w.algebra() != inner.source()) {
    throw AlgebraMismatch("compose_quadratic: w is in " + w.algebra().name() + ", map source is " +
                          inner.source().name());
  }
  return LinearMap(inner.source(), inner.target(),
                   Composed{std::make_shared<const LinearMap>(inner), std::move(w)});
}

std::string LinearMap::describe() const {
  return std::visit(Overloaded{
                        [&](const InnerProducts& ip) {
                          return "InnerProductMap(" + source_.name() + " -> Rn(" +
                                 std::to_string(ip.measurements.rows()) + "))";
                        },
                        [&](const RankOne& r) {
                          return "RankOneAssembly(Rn(" + std::to_string(r.points.cols()) + ") -> Sym(" +
                                 std::to_string(r.points.rows()) + "))";
                        },
                        [&](const Composed& c) { return c.inner->describe() + " o P(w)"; },
                    },
                    kind_);
}

Element LinearMap::apply(const Element& x) const {
  if (x.algebra() != source_) {
    throw AlgebraMismatch("map_apply: expected " + source_.name() + ", got " + x.algebra().name());
  }
  return std::visit(Overloaded{
                        [&](const InnerProducts& ip) { return Element(target_, ip.functionals * x.coords()); },
                        [&](const RankOne& r) {
                          const Eigen::MatrixXd m = r.points * x.coords().asDiagonal() * r.points.transpose();
                          return Element(target_, pack_sym(m));
                        },
                        [&](const Composed& c) { return c.inner->apply(quad_rep_apply(c.w, x)); },
                    },
                    kind_);
}

Element LinearMap::adjoint(const Element& y) const {
  if (y.algebra() != target_) {
    throw AlgebraMismatch("map_adjoint: expected " + target_.name() + ", got " + y.algebra().name());
  }
  return std::visit(Overloaded{
                        [&](const InnerProducts& ip) {
                          // sum_j y_j c_j; the target Rn(m) has unit metric.
                          return Element(source_, ip.measurements.transpose() * y.coords());
                        },
                        [&](const RankOne& r) {
                          const Eigen::MatrixXd ym = unpack_sym(y.coords(), target_.order());
                          const Eigen::MatrixXd ya = ym * r.points;
                          Eigen::VectorXd out = r.points.cwiseProduct(ya).colwise().sum().transpose();
                          return Element(source_, std::move(out));
                        },
                        [&](const Composed& c) { return quad_rep_apply(c.w, c.inner->adjoint(y)); },
                    },
                    kind_);
}

Element map_apply(const LinearMap& map, const Element& x) { return map.apply(x); }
Element map_adjoint(const LinearMap& map, const Element& y) { return map.adjoint(y); }

}  // namespace jmg
