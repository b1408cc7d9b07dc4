#pragma once

// Generalized multiplicative gradient (GMG) iteration
//   x_hat = exp(ln x + ln grad F(x)),   x_next = x_hat / tr(x_hat)
// on the trace-one slice C of a symmetric cone, with the certificate
//   F* - F(x) <= ln lambda_max(grad F(x))
// available at every interior point.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jordan_mg/instance.hpp"

namespace jmg {

struct SolverConfig {
  std::size_t max_iters = 1000;
  double gap_tol = 1e-6;
  std::optional<Element> x0;  // default e / r
  std::size_t log_every = 1;
  bool track_average = true;
};

// Throws std::invalid_argument on a bad configuration for this instance.
void validate_config(const ProblemInstance& instance, const SolverConfig& config);

struct IterationRecord {
  std::size_t t = 0;
  double objective_value = 0.0;          // F(x^t)
  double cert_gap = 0.0;                 // ln lambda_max(grad F(x^t))
  double avg_objective_value = 0.0;      // F of the mean of x^0..x^t
  double avg_cert_gap = 0.0;
  double lambda_min_iterate = 0.0;
  double trace_pre_normalization = 0.0;  // tr(x_hat^{t+1})
  double wall_time_ms = 0.0;             // informational only
};

enum class TerminationKind { GapTolReached, MaxIters, NumericalFailure };

struct Termination {
  TerminationKind kind = TerminationKind::MaxIters;
  std::size_t iteration = 0;
  std::string detail;
};

std::string to_string(TerminationKind kind);

struct SolveReport {
  std::vector<IterationRecord> records;
  Element final_iterate;
  Element best_iterate;  // largest F seen
  double best_value;
  double best_cert_gap;
  Element averaged_iterate;  // mean of x^0..x^T, trace renormalized
  double averaged_value;
  double averaged_cert_gap;
  double max_trace_pre;  // over every step taken
  std::size_t iterations;  // GMG steps taken
  Termination termination;
};

struct StepResult {
  Element x_next;
  double trace_pre;
};

// One GMG step from x in ri C. On Rn blocks the step is the elementwise
// product x_i * grad_i F(x). Throws DomainError if x or grad F(x) is not
// interior.
StepResult gmg_step(const ProblemInstance& instance, const Element& x);

// ln lambda_max(grad F(x)). Throws DomainError unless x is interior.
double certified_gap(const ProblemInstance& instance, const Element& x);

// Everything the iteration knows about one step, for external audits.
struct StepObservation {
  std::size_t t;
  const Element& x;
  const Element& log_x;
  const Element& grad;
  const Element& next_x;
  const Element& next_log_x;
  double trace_pre;
};
using StepObserver = std::function<void(const StepObservation&)>;

SolveReport solve(const ProblemInstance& instance, const SolverConfig& config, const StepObserver& observer = {});

// Long-run estimate of F*. upper = min_t F(x^t) + cert(x^t) is a certified
// upper bound, lower = max_t F(x^t) is attained; F* lies in [lower, upper].
struct ReferenceOptimum {
  double upper;
  double lower;
  Element best_iterate;
  std::size_t iterations;

  double value() const { return upper; }
  double uncertainty() const { return upper - lower; }
};

ReferenceOptimum reference_optimum(const ProblemInstance& instance, std::size_t max_iters = 1'000'000,
                                   double target_uncertainty = 1e-11);

// Averaged iterates mean(x^0..x^{T-1}) for each requested T (T >= 1) of one
// GMG run from x0 (default e / r).
std::vector<Element> averaged_iterates(const ProblemInstance& instance, const std::vector<std::size_t>& Ts,
                                       const std::optional<Element>& x0 = std::nullopt);

}  // namespace jmg
