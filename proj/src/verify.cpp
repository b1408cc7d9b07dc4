#include "jordan_mg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jordan_mg/cone.hpp"

namespace jmg {

namespace {

std::string echo(const Element& x) {
  std::ostringstream s;
  s.precision(17);
  s << x.algebra().name() << "[";
  for (std::size_t k = 0; k < x.size(); ++k) s << (k ? ", " : "") << x[k];
  s << "]";
  return s.str();
}

CheckResult finish(double margin, double scale, double tol, const std::function<std::string()>& witness) {
  CheckResult r;
  r.margin = margin;
  r.scale = scale;
  r.passed = margin >= -tol * scale;
  if (!r.passed) r.witness = witness();
  return r;
}

double abs_max_eig(const Element& x) {
  const auto [lo, hi] = lambda_extremes(x);
  return std::max(std::abs(lo), std::abs(hi));
}

Element exp_of(const Element& x) { return spectral_map(x, SpectralFunction::exp()); }
Element ln_of(const Element& x) { return spectral_map(x, SpectralFunction::log()); }

}  // namespace

CheckResult check_golden_thompson(const Element& x, const Element& y, CheckOptions opt) {
  require_same_algebra(x, y, "check_golden_thompson");
  const double rhs = trace(jordan_product(exp_of(x), exp_of(y)));
  const double lhs = trace(exp_of(x + y));
  return finish(rhs - lhs, std::max(1.0, std::abs(rhs)), opt.tol,
                [&] { return "x=" + echo(x) + " y=" + echo(y); });
}

CheckResult check_ln_monotone(const Element& x, const Element& y, CheckOptions opt) {
  require_same_algebra(x, y, "check_ln_monotone");
  if (!in_interior(x)) throw DomainError("check_ln_monotone: x is not in the cone interior");
  if (!in_cone(y - x)) throw DomainError("check_ln_monotone: y - x is not in the cone");
  const Element lx = ln_of(x), ly = ln_of(y);
  const Element ix = spectral_map(x, SpectralFunction::inv());
  const Element iy = spectral_map(y, SpectralFunction::inv());
  const double m_ln = lambda_extremes(ly - lx).min;
  const double m_inv = lambda_extremes(ix - iy).min;
  const double scale = 1.0 + std::max({abs_max_eig(lx), abs_max_eig(ly), abs_max_eig(ix)});
  return finish(std::min(m_ln, m_inv), scale, opt.tol, [&] { return "x=" + echo(x) + " y=" + echo(y); });
}

CheckResult check_cs_inequality(const std::vector<Element>& v, const std::vector<double>& alpha,
                                const std::vector<double>& beta, CheckOptions opt) {
  if (v.empty() || alpha.size() != v.size() || beta.size() != v.size()) {
    throw std::invalid_argument("check_cs_inequality: v, alpha, beta must be non-empty and of equal length");
  }
  const Algebra& a = v.front().algebra();
  Element sbb = Element::zero(a), sab = Element::zero(a), saa = Element::zero(a);
  for (std::size_t i = 0; i < v.size(); ++i) {
    require_same_algebra(v[i], v.front(), "check_cs_inequality");
    sbb = sbb + (beta[i] * beta[i]) * v[i];
    sab = sab + (alpha[i] * beta[i]) * v[i];
    saa = saa + (alpha[i] * alpha[i]) * v[i];
  }
  if (!in_interior(saa)) throw DomainError("check_cs_inequality: sum alpha_i^2 v_i is not in the cone interior");
  const Element rhs = quad_rep_apply(sab, spectral_map(saa, SpectralFunction::inv()));
  const double margin = lambda_extremes(sbb - rhs).min;
  const double scale = 1.0 + std::max(abs_max_eig(sbb), abs_max_eig(rhs));
  return finish(margin, scale, opt.tol, [&] {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += "v" + std::to_string(i) + "=" + echo(v[i]) + " a=" + std::to_string(alpha[i]) +
           " b=" + std::to_string(beta[i]) + "; ";
    }
    return s;
  });
}

CheckResult check_growth_bound(const ProblemInstance& instance, const Element& x, const Element& x_star,
                               CheckOptions opt) {
  if (!in_interior(x)) throw DomainError("check_growth_bound: x is not in the cone interior");
  const ObjectiveEval ev = instance.evaluate(x);
  const double f_star = instance.value(x_star);
  const double margin = std::log(inner(ev.gradient, x_star)) - (f_star - ev.value);
  const double scale = 1.0 + std::abs(f_star) + std::abs(ev.value);
  return finish(margin, scale, opt.tol, [&] { return "x=" + echo(x) + " x_star=" + echo(x_star); });
}

CheckResult check_grad_log_convexity(const ProblemInstance& instance, const Element& x, const Element& y,
                                     double lambda, const Element& u, CheckOptions opt) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("check_grad_log_convexity: lambda outside [0, 1]");
  require_same_algebra(x, u, "check_grad_log_convexity");
  const double idem = norm(jordan_product(u, u) - u);
  if (idem > 1e-8 || std::abs(norm(u) - 1.0) > 1e-8) {
    throw std::invalid_argument("check_grad_log_convexity: u is not a primitive idempotent");
  }
  const Element lx = ln_of(instance.gradient(x));
  const Element ly = ln_of(instance.gradient(y));
  const Element lm = ln_of(instance.gradient(lambda * x + (1.0 - lambda) * y));
  const Element combo = lambda * lx + (1.0 - lambda) * ly;
  const double margin = inner(combo - lm, u);
  const double scale = 1.0 + std::max({abs_max_eig(lx), abs_max_eig(ly), abs_max_eig(lm)});
  return finish(margin, scale, opt.tol, [&] {
    return "x=" + echo(x) + " y=" + echo(y) + " lambda=" + std::to_string(lambda) + " u=" + echo(u);
  });
}

CheckResult check_grad_fd(const ProblemInstance& instance, const Element& x) {
  const auto [lo, hi] = lambda_extremes(x);
  if (!(lo > domain_floor(hi))) throw DomainError("check_grad_fd: x is not in the cone interior");
  const Algebra& a = x.algebra();
  const Element g = instance.gradient(x);
  const double h = 1e-5 * lo;
  double err = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Element d = Element::unit(a, k);
    const double fd = (instance.value(x + h * d) - instance.value(x - h * d)) / (2.0 * h);
    const double exact = inner(g, d);
    err = std::max(err, std::abs(fd - exact));
    ref = std::max(ref, std::abs(exact));
  }
  const double rel = err / std::max(ref, 1e-300);
  CheckResult r;
  r.margin = 1e-5 - rel;
  r.scale = 1e-5;
  r.passed = r.margin >= 0.0;
  if (!r.passed) r.witness = "x=" + echo(x) + " relative error " + std::to_string(rel);
  return r;
}

}  // namespace jmg
