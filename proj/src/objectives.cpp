#include <cmath>
#include <sstream>

#include "jordan_mg/objectives.hpp"

namespace jmg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive_coords(const Element& y, const char* what) {
  if (!(y.coords().minCoeff() > 0.0)) {
    throw DomainError(std::string(what) + ": input must be strictly positive (min coordinate " +
                      std::to_string(y.coords().minCoeff()) + ")");
  }
}

}  // namespace

Objective Objective::weighted_log(Eigen::VectorXd weights) {
  if (weights.size() == 0) throw std::invalid_argument("weighted_log: no weights");
  if (!(weights.minCoeff() > 0.0)) throw std::invalid_argument("weighted_log: weights must be positive");
  if (std::abs(weights.sum() - 1.0) > 1e-10) throw std::invalid_argument("weighted_log: weights must sum to one");
  Algebra domain = Algebra::rn(static_cast<std::size_t>(weights.size()));
  return Objective(std::move(domain), WeightedLog{std::move(weights)});
}

Objective Objective::log_det_normalized(Algebra domain) { return Objective(std::move(domain), LogDet{}); }

Objective Objective::log_p_norm(double p, std::size_t m) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("log_p_norm: p must lie in (0, 1)");
  return Objective(Algebra::rn(m), LogPNorm{p});
}

Objective Objective::convex_combination(std::vector<std::pair<double, Objective>> terms) {
  if (terms.empty()) throw std::invalid_argument("convex_combination: no terms");
  double total = 0.0;
  for (const auto& [beta, f] : terms) {
    if (!(beta > 0.0)) throw std::invalid_argument("convex_combination: weights must be positive");
    if (f.domain() != terms.front().second.domain()) {
      throw AlgebraMismatch("convex_combination: terms live on different algebras");
    }
    total += beta;
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("convex_combination: weights must sum to one");
  Algebra domain = terms.front().second.domain();
  return Objective(std::move(domain), Combination{std::move(terms)});
}

std::string Objective::describe() const {
  return std::visit(Overloaded{
                        [&](const WeightedLog& w) { return "WeightedLog(m=" + std::to_string(w.weights.size()) + ")"; },
                        [&](const LogDet&) { return "LogDetNormalized(" + domain_.name() + ")"; },
                        [&](const LogPNorm& l) {
                          std::ostringstream s;
                          s << "LogPNorm(p=" << l.p << ", m=" << domain_.dim() << ")";
                          return s.str();
                        },
                        [&](const Combination& c) {
                          std::string s = "ConvexCombination(";
                          for (std::size_t i = 0; i < c.terms.size(); ++i) {
                            s += (i ? ", " : "") + c.terms[i].second.describe();
                          }
                          return s + ")";
                        },
                    },
                    kind_);
}

void Objective::check_domain(const Element& y) const {
  if (y.algebra() != domain_) {
    throw AlgebraMismatch("objective on " + domain_.name() + " evaluated at " + y.algebra().name());
  }
}

double Objective::value(const Element& y) const { return evaluate(y).value; }

Element Objective::gradient(const Element& y) const { return evaluate(y).gradient; }

ObjectiveEval Objective::evaluate(const Element& y) const {
  check_domain(y);
  return std::visit(
      Overloaded{
          [&](const WeightedLog& w) -> ObjectiveEval {
            require_positive_coords(y, "WeightedLog");
            const Eigen::VectorXd& v = y.coords();
            const double value = w.weights.dot(v.array().log().matrix());
            return {value, Element(domain_, w.weights.cwiseQuotient(v))};
          },
          [&](const LogDet&) -> ObjectiveEval {
            const Spectrum s(y);
            if (!(s.min() > domain_floor(s.max()))) {
              throw DomainError("LogDetNormalized: argument not in the cone interior (lambda_min = " +
                                std::to_string(s.min()) + ")");
            }
            const double r = static_cast<double>(domain_.rank());
            const double value = s.values().array().log().sum() / r;
            return {value, s.apply([r](double l) { return 1.0 / (r * l); })};
          },
          [&](const LogPNorm& l) -> ObjectiveEval {
            require_positive_coords(y, "LogPNorm");
            // Scale out the largest entry so that y^p neither overflows nor underflows.
            const double top = y.coords().maxCoeff();
            const Eigen::ArrayXd u = y.coords().array() / top;
            const Eigen::ArrayXd up = u.pow(l.p);
            const double s = up.sum();
            const double value = std::log(top) + std::log(s) / l.p;
            // grad_j = y_j^{p-1} / sum_k y_k^p = (u_j^{p-1} / s) / top
            const Eigen::VectorXd g = ((up / u) / (s * top)).matrix();
            return {value, Element(domain_, g)};
          },
          [&](const Combination& c) -> ObjectiveEval {
            double value = 0.0;
            Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain_.dim()));
            for (const auto& [beta, f] : c.terms) {
              const ObjectiveEval e = f.evaluate(y);
              value += beta * e.value;
              g += beta * e.gradient.coords();
            }
            return {value, Element(domain_, std::move(g))};
          },
      },
      kind_);
}

}  // namespace jmg
