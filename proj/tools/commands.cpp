#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jordan_mg/problems.hpp"
#include "jordan_mg/solver.hpp"
#include "jordan_mg/verify.hpp"

namespace jmg::cli {

namespace {

using nlohmann::json;

Element load_x0(const std::string& path, const Algebra& algebra) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open x0 file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document): " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("coords")) throw SchemaError("coords: missing field in " + path);
  for (const auto& [key, _] : doc.items()) {
    if (key != "coords") throw SchemaError(key + ": unknown field in " + path);
  }
  const json& c = doc["coords"];
  if (!c.is_array() || c.size() != algebra.dim()) {
    throw SchemaError("coords: expected " + std::to_string(algebra.dim()) + " numbers for " + algebra.name());
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].is_number()) throw SchemaError("coords[" + std::to_string(k) + "]: expected a number");
    v[static_cast<Eigen::Index>(k)] = c[k].get<double>();
  }
  return Element(algebra, std::move(v));
}

json coords_json(const Element& x) {
  json a = json::array();
  for (std::size_t k = 0; k < x.size(); ++k) a.push_back(x[k]);
  return a;
}

// NaN / inf are not representable in JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_trace(const std::string& path, const std::vector<IterationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path);
  out << "t,objective_value,cert_gap,avg_objective_value,avg_cert_gap,lambda_min_iterate,"
         "trace_pre_normalization,wall_time_ms\n";
  for (const auto& r : records) {
    out << r.t << ',' << format_double(r.objective_value) << ',' << format_double(r.cert_gap) << ','
        << format_double(r.avg_objective_value) << ',' << format_double(r.avg_cert_gap) << ','
        << format_double(r.lambda_min_iterate) << ',' << format_double(r.trace_pre_normalization) << ','
        << format_double(r.wall_time_ms) << '\n';
  }
  if (!out) throw std::runtime_error("error writing trace file " + path);
}

void write_report(const std::string& path, const ProblemInstance& inst, const SolverConfig& cfg,
                  const SolveReport& rep) {
  json doc;
  doc["instance"] = {{"name", inst.name()},
                     {"provenance", inst.provenance()},
                     {"cone", inst.cone_algebra().name()},
                     {"rank", inst.cone_algebra().rank()},
                     {"map", inst.map().describe()},
                     {"objective", inst.objective().describe()}};
  doc["config"] = {{"max_iters", cfg.max_iters}, {"gap_tol", cfg.gap_tol}, {"log_every", cfg.log_every},
                   {"x0", cfg.x0 ? "file" : "center"}};
  doc["termination"] = {{"reason", to_string(rep.termination.kind)}, {"iteration", rep.termination.iteration}};
  if (!rep.termination.detail.empty()) doc["termination"]["detail"] = rep.termination.detail;
  doc["iterations"] = rep.iterations;
  const double final_gap = std::min(rep.best_cert_gap, rep.averaged_cert_gap);
  doc["final_gap"] = number(final_gap);
  doc["max_trace_pre_normalization"] = number(rep.max_trace_pre);
  doc["best"] = {{"objective_value", number(rep.best_value)},
                 {"cert_gap", number(rep.best_cert_gap)},
                 {"coords", coords_json(rep.best_iterate)}};
  doc["averaged"] = {{"objective_value", number(rep.averaged_value)},
                     {"cert_gap", number(rep.averaged_cert_gap)},
                     {"coords", coords_json(rep.averaged_iterate)}};
  doc["final"] = {{"coords", coords_json(rep.final_iterate)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file " + path);
  out << doc.dump(1) << '\n';
}

std::vector<std::size_t> parse_t_list(const std::string& text) {
  std::vector<std::size_t> Ts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size() || !(v >= 1.0) || v != std::floor(v)) {
      throw std::invalid_argument("--T: '" + item + "' is not a positive integer");
    }
    Ts.push_back(static_cast<std::size_t>(v));
  }
  return Ts;
}

int cmd_solve(const std::string& instance_path, const SolverConfig& base, const std::string& x0_arg,
              const std::string& trace_out, const std::string& report_out) {
  const ProblemInstance inst = load_instance(instance_path);
  SolverConfig cfg = base;
  if (x0_arg != "center") cfg.x0 = load_x0(x0_arg, inst.cone_algebra());
  validate_config(inst, cfg);
  const SolveReport rep = solve(inst, cfg);
  if (!trace_out.empty()) write_trace(trace_out, rep.records);
  if (!report_out.empty()) write_report(report_out, inst, cfg, rep);

  std::cout << inst.name() << ": " << to_string(rep.termination.kind) << " after " << rep.iterations
            << " iterations\n"
            << "  best F = " << format_double(rep.best_value) << "  cert gap = " << format_double(rep.best_cert_gap)
            << "\n  averaged F = " << format_double(rep.averaged_value)
            << "  cert gap = " << format_double(rep.averaged_cert_gap) << '\n';
  switch (rep.termination.kind) {
    case TerminationKind::GapTolReached: return kExitOk;
    case TerminationKind::MaxIters: return kExitMaxIters;
    case TerminationKind::NumericalFailure:
      std::cerr << "numerical failure at iteration " << rep.termination.iteration << ": " << rep.termination.detail
                << '\n';
      return kExitError;
  }
  return kExitError;
}

int cmd_generate(const std::string& kind, std::size_t m, std::size_t n, std::uint64_t seed, const std::string& out) {
  const InstanceSpec spec = random_spec(parse_kind(kind), {m, n}, seed);
  const ProblemInstance inst = build_instance(spec);
  save_instance(inst, out);
  std::cout << "wrote " << inst.name() << " to " << out << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t seeds) {
  const SuiteReport rep = run_suite(suite, seeds);
  bool ok = true;
  for (const auto& c : rep.checks) {
    const bool pass = c.passed == c.total;
    ok = ok && pass;
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << "  " << c.passed << "/" << c.total
              << "  worst relative margin " << format_double(c.worst_relative_margin) << '\n';
    if (c.first_failure) std::cout << "     first failure: " << *c.first_failure << '\n';
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_rate(const std::string& instance_path, const std::string& t_list, const std::string& out,
             std::size_t ref_iters) {
  const std::vector<std::size_t> Ts = parse_t_list(t_list);
  if (Ts.empty()) throw std::invalid_argument("--T: empty list");
  const ProblemInstance inst = load_instance(instance_path);
  const ReferenceOptimum ref = reference_optimum(inst, ref_iters);
  const std::vector<Element> avgs = averaged_iterates(inst, Ts);
  const double log_r = std::log(static_cast<double>(inst.cone_algebra().rank()));
  std::ofstream csv(out);
  if (!csv) throw std::runtime_error("cannot write " + out);
  csv << "T,gap,bound\n";
  for (std::size_t k = 0; k < Ts.size(); ++k) {
    const double gap = ref.value() - inst.value(avgs[k]);
    csv << Ts[k] << ',' << format_double(gap) << ',' << format_double(log_r / static_cast<double>(Ts[k])) << '\n';
  }
  if (!csv) throw std::runtime_error("error writing " + out);
  std::cout << "reference F* = " << format_double(ref.value()) << " (uncertainty "
            << format_double(ref.uncertainty()) << " after " << ref.iterations << " iterations)\n";
  return kExitOk;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Generalized multiplicative gradient solver over symmetric cones", "jordan-mg"};
  app.require_subcommand(1);

  std::string instance_path, x0 = "center", trace_out, report_out;
  SolverConfig cfg;
  auto* solve_cmd = app.add_subcommand("solve", "Run GMG on an instance file");
  solve_cmd->add_option("instance", instance_path, "Instance file (JSON)")->required();
  solve_cmd->add_option("--max-iters", cfg.max_iters, "Iteration limit")->capture_default_str();
  solve_cmd->add_option("--gap-tol", cfg.gap_tol, "Stop once the certified gap is at most this")->capture_default_str();
  solve_cmd->add_option("--x0", x0, "'center' (e/r) or a JSON file {\"coords\": [...]}")->capture_default_str();
  solve_cmd->add_option("--log-every", cfg.log_every, "Record every k-th iteration")->capture_default_str();
  solve_cmd->add_option("--trace-out", trace_out, "CSV convergence trace");
  solve_cmd->add_option("--report-out", report_out, "JSON report");

  std::string kind, out;
  std::size_t m = 0, n = 0;
  std::uint64_t seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random instance file");
  gen_cmd->add_option("--kind", kind, "pet | doptimal | qst_real | bqp")->required();
  gen_cmd->add_option("--m", m, "Number of bins / points / measurements (ignored for bqp)");
  gen_cmd->add_option("--n", n, "Ambient dimension")->required();
  gen_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--out", out, "Output path")->required();

  std::string suite = "all";
  std::size_t seeds = 200;
  auto* ver_cmd = app.add_subcommand("verify", "Run the randomized verification suites");
  ver_cmd->add_option("--suite", suite, "eja | cone | objectives | inequalities | all")->capture_default_str();
  ver_cmd->add_option("--seeds", seeds, "Random cases per algebra / family")->capture_default_str();

  std::string t_list;
  std::size_t ref_iters = 1'000'000;
  auto* rate_cmd = app.add_subcommand("rate", "Measured ergodic gap against ln(r)/T");
  rate_cmd->add_option("instance", instance_path, "Instance file (JSON)")->required();
  rate_cmd->add_option("--T", t_list, "Comma-separated horizons, e.g. 10,100,1000")->required();
  rate_cmd->add_option("--out", out, "Output CSV")->required();
  rate_cmd->add_option("--ref-iters", ref_iters, "Iteration budget of the reference run")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(instance_path, cfg, x0, trace_out, report_out);
    if (*gen_cmd) return cmd_generate(kind, m, n, seed, out);
    if (*ver_cmd) return cmd_verify(suite, seeds);
    if (*rate_cmd) return cmd_rate(instance_path, t_list, out, ref_iters);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace jmg::cli
