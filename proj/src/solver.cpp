#include "jordan_mg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "jordan_mg/cone.hpp"

namespace jmg {

namespace {

// exp(-750) is exactly zero in double precision; log-iterate eigenvalues are
// floored there so that the log iterate stays bounded on long runs.
constexpr double kLogFloor = -750.0;

double lambda_max(const Element& x) {
  const Algebra& a = x.algebra();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < a.num_blocks(); ++b) {
    const Algebra& blk = a.block(b);
    const auto off = static_cast<Eigen::Index>(a.block_offset(b));
    const auto d = static_cast<Eigen::Index>(blk.dim());
    const auto seg = x.coords().segment(off, d);
    switch (blk.kind()) {
      case AlgebraKind::Rn: best = std::max(best, seg.maxCoeff()); break;
      case AlgebraKind::Spin: best = std::max(best, seg[0] + seg.tail(d - 1).norm()); break;
      default: best = std::max(best, Spectrum(Element(blk, seg)).max()); break;
    }
  }
  return best;
}

double log_lambda_max(const Element& g) {
  const double top = lambda_max(g);
  if (!(top > 0.0) || !std::isfinite(top)) {
    throw NumericalError("gradient has lambda_max = " + std::to_string(top));
  }
  return std::log(top);
}

struct Advance {
  Element x;
  Element z;
  double trace_pre;
  double log_lambda_min;  // of x, before flooring the log iterate
};

// One GMG step carried in both the primal iterate x and its logarithm z.
// Rn blocks are updated multiplicatively; the other blocks through one
// eigen-decomposition of z + ln g.
Advance advance(const Element& x, const Element& z, const Element& g) {
  const Algebra& a = x.algebra();
  const auto dim = static_cast<Eigen::Index>(a.dim());
  Eigen::VectorXd xh(dim);
  Eigen::VectorXd zh(dim);
  std::vector<std::optional<Spectrum>> spectra(a.num_blocks());
  double tr = 0.0;
  double log_min = std::numeric_limits<double>::infinity();

  for (std::size_t b = 0; b < a.num_blocks(); ++b) {
    const Algebra& blk = a.block(b);
    const auto off = static_cast<Eigen::Index>(a.block_offset(b));
    const auto d = static_cast<Eigen::Index>(blk.dim());
    const auto gs = g.coords().segment(off, d);
    if (blk.kind() == AlgebraKind::Rn) {
      if (!(gs.minCoeff() > 0.0)) throw DomainError("gradient left the cone interior (Rn block " + std::to_string(b) + ")");
      xh.segment(off, d) = x.coords().segment(off, d).cwiseProduct(gs);
      zh.segment(off, d) = z.coords().segment(off, d) + gs.array().log().matrix();
      tr += xh.segment(off, d).sum();
      log_min = std::min(log_min, zh.segment(off, d).minCoeff());
    } else {
      const Element lg = spectral_map(Element(blk, gs), SpectralFunction::log());
      const Element zb(blk, z.coords().segment(off, d) + lg.coords());
      spectra[b].emplace(zb);
      const Spectrum& s = *spectra[b];
      const Element xb = s.apply([](double l) { return std::exp(l); });
      xh.segment(off, d) = xb.coords();
      tr += s.values().array().exp().sum();
      log_min = std::min(log_min, s.min());
    }
  }
  if (!(tr > 0.0) || !std::isfinite(tr)) throw NumericalError("trace before normalization is " + std::to_string(tr));
  const double ltr = std::log(tr);

  Eigen::VectorXd zn(dim);
  for (std::size_t b = 0; b < a.num_blocks(); ++b) {
    const Algebra& blk = a.block(b);
    const auto off = static_cast<Eigen::Index>(a.block_offset(b));
    const auto d = static_cast<Eigen::Index>(blk.dim());
    if (blk.kind() == AlgebraKind::Rn) {
      zn.segment(off, d) = (zh.segment(off, d).array() - ltr).max(kLogFloor).matrix();
    } else {
      zn.segment(off, d) = spectra[b]->apply([ltr](double l) { return std::max(l - ltr, kLogFloor); }).coords();
    }
  }
  return {Element(a, xh / tr), Element(a, std::move(zn)), tr, log_min - ltr};
}

Element checked_log(const Element& x) { return spectral_map(x, SpectralFunction::log()); }

ObjectiveEval checked_evaluate(const ProblemInstance& instance, const Element& x) {
  ObjectiveEval ev = instance.evaluate(x);
  if (!std::isfinite(ev.value)) throw NumericalError("objective value is not finite");
  return ev;
}

}  // namespace

std::string to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::GapTolReached: return "GapTolReached";
    case TerminationKind::MaxIters: return "MaxIters";
    case TerminationKind::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

void validate_config(const ProblemInstance& instance, const SolverConfig& config) {
  if (!(config.gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");
  if (config.log_every == 0) throw std::invalid_argument("log_every must be positive");
  if (config.x0) {
    const Element& x0 = *config.x0;
    if (x0.algebra() != instance.cone_algebra()) {
      throw std::invalid_argument("x0 lives in " + x0.algebra().name() + ", instance cone is " +
                                  instance.cone_algebra().name());
    }
    if (std::abs(trace(x0) - 1.0) > 1e-10) {
      throw std::invalid_argument("x0 must have trace 1 (got " + std::to_string(trace(x0)) + ")");
    }
    if (!in_interior(x0)) throw std::invalid_argument("x0 must lie in the cone interior");
  }
}

StepResult gmg_step(const ProblemInstance& instance, const Element& x) {
  const Element z = checked_log(x);
  const Element g = instance.gradient(x);
  Advance adv = advance(x, z, g);
  return {std::move(adv.x), adv.trace_pre};
}

double certified_gap(const ProblemInstance& instance, const Element& x) {
  const Spectrum s(x);
  if (!(s.min() > domain_floor(s.max()))) {
    throw DomainError("certified_gap: x is not in the cone interior (lambda_min = " + std::to_string(s.min()) + ")");
  }
  return log_lambda_max(instance.gradient(x));
}

SolveReport solve(const ProblemInstance& instance, const SolverConfig& config, const StepObserver& observer) {
  validate_config(instance, config);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

  Element x = config.x0 ? *config.x0 : instance.center();
  Element z = checked_log(x);
  double log_lmin = Spectrum(z).min();
  Element avg = x;
  double avg_value = std::numeric_limits<double>::quiet_NaN();
  double avg_cert = std::numeric_limits<double>::quiet_NaN();
  Element best = x;
  double best_value = -std::numeric_limits<double>::infinity();
  double best_cert = std::numeric_limits<double>::infinity();
  double max_trace_pre = 0.0;
  std::vector<IterationRecord> records;
  Termination term;
  std::size_t t = 0;

  try {
    for (;; ++t) {
      const ObjectiveEval ev = checked_evaluate(instance, x);
      const double cert = log_lambda_max(ev.gradient);
      if (ev.value > best_value) {
        best_value = ev.value;
        best_cert = cert;
        best = x;
      }
      if (config.track_average) {
        if (t > 0) {
          avg = avg + (x - avg) / static_cast<double>(t + 1);
          avg = avg / trace(avg);
        }
        const ObjectiveEval av = checked_evaluate(instance, avg);
        avg_value = av.value;
        avg_cert = log_lambda_max(av.gradient);
      }

      Advance adv = advance(x, z, ev.gradient);
      max_trace_pre = std::max(max_trace_pre, adv.trace_pre);
      if (observer) observer(StepObservation{t, x, z, ev.gradient, adv.x, adv.z, adv.trace_pre});

      const double gap = config.track_average ? std::min(best_cert, avg_cert) : best_cert;
      const bool reached = gap <= config.gap_tol;
      const bool out_of_iters = t >= config.max_iters;
      if (reached || out_of_iters || t % config.log_every == 0) {
        records.push_back({t, ev.value, cert, avg_value, avg_cert, std::exp(log_lmin), adv.trace_pre, elapsed_ms()});
      }
      if (reached) {
        term = {TerminationKind::GapTolReached, t, {}};
        break;
      }
      if (out_of_iters) {
        term = {TerminationKind::MaxIters, t, {}};
        break;
      }
      x = std::move(adv.x);
      z = std::move(adv.z);
      log_lmin = adv.log_lambda_min;
    }
  } catch (const Error& e) {
    term = {TerminationKind::NumericalFailure, t, e.what()};
  }

  return SolveReport{std::move(records), x,         std::move(best), best_value, best_cert, std::move(avg),
                     avg_value,          avg_cert,  max_trace_pre,   t,          std::move(term)};
}

ReferenceOptimum reference_optimum(const ProblemInstance& instance, std::size_t max_iters,
                                   double target_uncertainty) {
  Element x = instance.center();
  Element z = checked_log(x);
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  Element best = x;
  std::size_t t = 0;
  for (;; ++t) {
    const ObjectiveEval ev = checked_evaluate(instance, x);
    upper = std::min(upper, ev.value + log_lambda_max(ev.gradient));
    if (ev.value > lower) {
      lower = ev.value;
      best = x;
    }
    if (upper - lower <= target_uncertainty || t >= max_iters) break;
    Advance adv = advance(x, z, ev.gradient);
    x = std::move(adv.x);
    z = std::move(adv.z);
  }
  return {upper, lower, std::move(best), t};
}

std::vector<Element> averaged_iterates(const ProblemInstance& instance, const std::vector<std::size_t>& Ts,
                                       const std::optional<Element>& x0) {
  if (Ts.empty()) return {};
  if (*std::min_element(Ts.begin(), Ts.end()) == 0) throw std::invalid_argument("averaged_iterates: T must be >= 1");
  if (x0) {
    SolverConfig probe;
    probe.x0 = x0;
    validate_config(instance, probe);
  }
  const std::size_t horizon = *std::max_element(Ts.begin(), Ts.end());
  Element x = x0 ? *x0 : instance.center();
  Element z = checked_log(x);
  Element mean = x;
  std::vector<std::optional<Element>> out(Ts.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t > 0) {
      mean = mean + (x - mean) / static_cast<double>(t + 1);
      mean = mean / trace(mean);
    }
    for (std::size_t k = 0; k < Ts.size(); ++k) {
      if (Ts[k] == t + 1) out[k] = mean;
    }
    if (t + 1 == horizon) break;
    Advance adv = advance(x, z, instance.gradient(x));
    x = std::move(adv.x);
    z = std::move(adv.z);
  }
  std::vector<Element> result;
  result.reserve(out.size());
  for (auto& e : out) result.push_back(std::move(*e));
  return result;
}

}  // namespace jmg
