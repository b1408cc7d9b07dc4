#include "jordan_mg/instance.hpp"

#include <cmath>

#include "jordan_mg/cone.hpp"

namespace jmg {

std::string kind_tag(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Pet: return "pet";
    case ProblemKind::DOptimal: return "doptimal";
    case ProblemKind::QstReal: return "qst_real";
    case ProblemKind::Bqp: return "bqp";
  }
  return "?";
}

ProblemKind parse_kind(const std::string& tag) {
  if (tag == "pet") return ProblemKind::Pet;
  if (tag == "doptimal") return ProblemKind::DOptimal;
  if (tag == "qst_real") return ProblemKind::QstReal;
  if (tag == "bqp") return ProblemKind::Bqp;
  throw std::invalid_argument("unknown problem kind '" + tag + "' (expected pet, doptimal, qst_real or bqp)");
}

ProblemInstance::ProblemInstance(LinearMap map, Objective objective, std::string name, std::string provenance,
                                 std::optional<InstanceSpec> spec)
    : map_(std::move(map)),
      objective_(std::move(objective)),
      name_(std::move(name)),
      provenance_(std::move(provenance)),
      spec_(std::move(spec)) {
  if (map_.target() != objective_.domain()) {
    throw AlgebraMismatch("instance '" + name_ + "': map target " + map_.target().name() +
                          " differs from objective domain " + objective_.domain().name());
  }
  const Element c = center();
  if (!in_interior(map_.apply(c))) {
    throw InvalidInstance("instance '" + name_ + "': A(e/r) is not in the interior of " + map_.target().name());
  }
  const Algebra& k2 = map_.target();
  const Element c2 = k2.identity() / static_cast<double>(k2.rank());
  if (!in_interior(map_.adjoint(c2))) {
    throw InvalidInstance("instance '" + name_ + "': A*(e/r) is not in the interior of " + map_.source().name());
  }
  const ObjectiveEval ev = evaluate(c);
  const double euler = inner(ev.gradient, c);
  if (!std::isfinite(ev.value) || std::abs(euler - 1.0) > 1e-8) {
    throw InvalidInstance("instance '" + name_ + "': <grad F(e/r), e/r> = " + std::to_string(euler) +
                          ", expected 1");
  }
}

Element ProblemInstance::center() const {
  const Algebra& k1 = cone_algebra();
  return k1.identity() / static_cast<double>(k1.rank());
}

ObjectiveEval ProblemInstance::evaluate(const Element& x) const {
  if (x.algebra() != cone_algebra()) {
    throw AlgebraMismatch("instance on " + cone_algebra().name() + " evaluated at " + x.algebra().name());
  }
  ObjectiveEval inner_eval = objective_.evaluate(map_.apply(x));
  return {inner_eval.value, map_.adjoint(inner_eval.gradient)};
}

double ProblemInstance::value(const Element& x) const { return objective_.value(map_.apply(x)); }

Element ProblemInstance::gradient(const Element& x) const { return evaluate(x).gradient; }

Element composite_grad(const ProblemInstance& instance, const Element& x) { return instance.gradient(x); }

StandardizedProblem standardize_affine(const LinearMap& map, const Objective& objective, const Element& a,
                                       std::string name) {
  if (a.algebra() != map.source()) {
    throw AlgebraMismatch("standardize_affine: a is in " + a.algebra().name() + ", map source is " +
                          map.source().name());
  }
  if (!in_interior(a)) throw DomainError("standardize_affine: a is not in the cone interior");
  Element w = spectral_map(a, SpectralFunction::pow(-0.5));
  LinearMap composed = LinearMap::compose_quadratic(map, w);
  return {ProblemInstance(std::move(composed), objective, std::move(name), "standardize_affine"), std::move(w)};
}

}  // namespace jmg
