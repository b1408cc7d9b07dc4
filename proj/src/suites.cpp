// Seeded randomized audits behind `jordan-mg verify`.

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "jordan_mg/cone.hpp"
#include "jordan_mg/problems.hpp"
#include "jordan_mg/random.hpp"
#include "jordan_mg/verify.hpp"

namespace jmg {

namespace {

std::vector<Algebra> suite_algebras() {
  return {Algebra::rn(8), Algebra::spin(9), Algebra::sym(6),
          Algebra::direct_sum({Algebra::rn(3), Algebra::spin(4), Algebra::sym(3)})};
}

struct Family {
  std::string name;
  std::function<ProblemInstance(std::uint64_t)> make;
};

// Small gradient-log-convex instances, one per shipped family, plus a convex
// combination of objectives on a shared Rn target.
std::vector<Family> suite_families() {
  return {
      {"pet", [](std::uint64_t s) { return random_instance(ProblemKind::Pet, {6, 4}, s); }},
      {"doptimal", [](std::uint64_t s) { return random_instance(ProblemKind::DOptimal, {8, 3}, s); }},
      {"qst_real", [](std::uint64_t s) { return random_instance(ProblemKind::QstReal, {9, 3}, s); }},
      {"bqp", [](std::uint64_t s) { return random_instance(ProblemKind::Bqp, {0, 3}, s); }},
      {"combination",
       [](std::uint64_t s) {
         Rng rng(s);
         std::uniform_real_distribution<double> ud(0.05, 1.0);
         const Algebra k1 = Algebra::rn(4);
         std::vector<Element> c;
         for (int j = 0; j < 5; ++j) {
           Eigen::VectorXd row(4);
           for (Eigen::Index i = 0; i < 4; ++i) row[i] = ud(rng);
           c.emplace_back(k1, row);
         }
         Eigen::VectorXd w(5);
         for (Eigen::Index j = 0; j < 5; ++j) w[j] = ud(rng);
         w /= w.sum();
         Objective f = Objective::convex_combination(
             {{0.3, Objective::weighted_log(w)}, {0.7, Objective::log_p_norm(0.5, 5)}});
         return ProblemInstance(LinearMap::inner_product_map(k1, c), std::move(f), "combination");
       }},
  };
}

std::string short_num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

class Tally {
 public:
  void add(const std::string& name, const CheckResult& r) {
    CheckSummary& s = slot(name);
    ++s.total;
    const double rel = r.relative_margin();
    if (s.total == 1 || rel < s.worst_relative_margin) s.worst_relative_margin = rel;
    if (r.passed) {
      ++s.passed;
    } else if (!s.first_failure) {
      s.first_failure = "margin " + short_num(r.margin) + " (scale " + short_num(r.scale) + ")" +
                        (r.witness ? ": " + *r.witness : std::string());
    }
  }

  // Property with an error magnitude that must stay below tol * scale.
  void bound(const std::string& name, double error, double scale, double tol) {
    CheckResult r;
    r.margin = -error;
    r.scale = scale;
    r.passed = error <= tol * scale;
    add(name, r);
  }

  // Equality case: |margin| <= tol (absolute).
  void equality(const std::string& name, const CheckResult& base, double tol) {
    CheckResult r = base;
    r.passed = std::abs(base.margin) <= tol;
    r.margin = -std::abs(base.margin);
    r.scale = 1.0;
    add(name, r);
  }

  void error(const std::string& name, const std::exception& e) {
    CheckSummary& s = slot(name);
    ++s.total;
    if (!s.first_failure) s.first_failure = std::string("exception: ") + e.what();
  }

  std::vector<CheckSummary> take() { return std::move(list_); }

 private:
  CheckSummary& slot(const std::string& name) {
    const auto it = index_.find(name);
    if (it != index_.end()) return list_[it->second];
    index_[name] = list_.size();
    list_.push_back({name, 0, 0, 0.0, std::nullopt});
    return list_.back();
  }

  std::vector<CheckSummary> list_;
  std::map<std::string, std::size_t> index_;
};

Rng make_rng(std::uint64_t base, std::uint64_t family, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(family), static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

template <class Body>
void guarded(Tally& tally, const std::string& name, Body&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    tally.error(name, e);
  }
}

// ---------------------------------------------------------------------------

void eja_suite(Tally& tally, std::size_t seeds, std::uint64_t base) {
  const auto algebras = suite_algebras();
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    const Algebra& a = algebras[ai];
    const std::string tag = "[" + a.name() + "]";
    const Element e = a.identity();
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng = make_rng(base, 100 + ai, s);
      const Element x = random_element(a, rng);
      const Element y = random_element(a, rng);
      const Element z = random_element(a, rng);
      const double nx = norm(x), ny = norm(y), nz = norm(z);

      guarded(tally, "reconstruction" + tag, [&] {
        const SpectralDecomposition d = spectral_decomposition(x);
        Element rec = Element::zero(a);
        for (std::size_t i = 0; i < d.frame.size(); ++i) rec = rec + d.eigenvalues[static_cast<Eigen::Index>(i)] * d.frame[i];
        tally.bound("reconstruction" + tag, norm(rec - x), 1.0 + nx, 1e-10);

        double frame_err = norm(std::accumulate(d.frame.begin(), d.frame.end(), Element::zero(a)) - e);
        for (std::size_t i = 0; i < d.frame.size(); ++i) {
          const Element& q = d.frame[i];
          frame_err = std::max(frame_err, norm(jordan_product(q, q) - q));
          frame_err = std::max(frame_err, std::abs(norm(q) - 1.0));
          for (std::size_t j = i + 1; j < d.frame.size(); ++j) frame_err = std::max(frame_err, std::abs(inner(q, d.frame[j])));
        }
        tally.bound("frame_invariants" + tag, frame_err, 1.0, 1e-8);
        bool sorted = true;
        for (Eigen::Index i = 1; i < d.eigenvalues.size(); ++i) sorted = sorted && d.eigenvalues[i - 1] >= d.eigenvalues[i];
        tally.bound("eigenvalues_descending" + tag, sorted ? 0.0 : 1.0, 1.0, 0.0);
      });

      guarded(tally, "exp_ln_round_trip" + tag, [&] {
        const auto [lo, hi] = lambda_extremes(x);
        if (std::max(std::abs(lo), std::abs(hi)) > 20.0) throw std::logic_error("sample outside |lambda| <= 20");
        const Element back = spectral_map(spectral_map(x, SpectralFunction::exp()), SpectralFunction::log());
        tally.bound("exp_ln_round_trip" + tag, norm(back - x), 1.0 + nx, 1e-8);
      });

      guarded(tally, "L_self_adjoint" + tag, [&] {
        const double d = inner(lin_rep_apply(x, y), z) - inner(y, lin_rep_apply(x, z));
        tally.bound("L_self_adjoint" + tag, std::abs(d), 1.0 + nx * ny * nz, 1e-10);
      });

      guarded(tally, "P_self_adjoint" + tag, [&] {
        const double d = inner(quad_rep_apply(x, y), z) - inner(y, quad_rep_apply(x, z));
        tally.bound("P_self_adjoint" + tag, std::abs(d), 1.0 + nx * nx * ny * nz, 1e-10);
      });

      guarded(tally, "P_fundamental_identity" + tag, [&] {
        // P(P(x)y) = P(x) P(y) P(x), as operators applied to the probe z.
        const Element lhs = quad_rep_apply(quad_rep_apply(x, y), z);
        const Element rhs = quad_rep_apply(x, quad_rep_apply(y, quad_rep_apply(x, z)));
        tally.bound("P_fundamental_identity" + tag, norm(lhs - rhs), 1.0 + std::pow(nx, 4) * ny * ny * nz, 1e-8);
      });

      guarded(tally, "P_power_identity" + tag, [&] {
        // P(x) x^{-1} = x and P(x^{1/2}) x^{-1} = e on interior x.
        const Element w = random_interior(a, rng);
        const Element winv = spectral_map(w, SpectralFunction::inv());
        const double nw = norm(w);
        tally.bound("P_power_identity" + tag, norm(quad_rep_apply(w, winv) - w), 1.0 + nw * nw * norm(winv), 1e-10);
        const Element half = spectral_map(w, SpectralFunction::pow(0.5));
        tally.bound("P_power_identity" + tag, norm(quad_rep_apply(half, winv) - e), 1.0 + nw * norm(winv), 1e-10);
      });

      guarded(tally, "jordan_identity" + tag, [&] {
        const Element x2 = jordan_product(x, x);
        const Element d = jordan_product(x2, jordan_product(x, y)) - jordan_product(x, jordan_product(x2, y));
        tally.bound("jordan_identity" + tag, norm(d), 1.0 + std::pow(nx, 3) * ny, 1e-10);
      });

      if (a.kind() == AlgebraKind::Sym) {
        guarded(tally, "P_equals_XYX" + tag, [&] {
          const Eigen::MatrixXd X = sym_to_matrix(x), Y = sym_to_matrix(y);
          const Element ref = sym_from_matrix(X * Y * X);
          tally.bound("P_equals_XYX" + tag, norm(quad_rep_apply(x, y) - ref), 1.0 + nx * nx * ny, 1e-10);
        });
      }

      if (a.kind() == AlgebraKind::DirectSum) {
        guarded(tally, "direct_sum_blockwise" + tag, [&] {
          std::vector<Element> prod, ex, pq;
          for (std::size_t b = 0; b < a.num_blocks(); ++b) {
            prod.push_back(jordan_product(x.block(b), y.block(b)));
            ex.push_back(spectral_map(x.block(b), SpectralFunction::exp()));
            pq.push_back(quad_rep_apply(x.block(b), y.block(b)));
          }
          double err = norm(jordan_product(x, y) - assemble(a, prod));
          err = std::max(err, norm(spectral_map(x, SpectralFunction::exp()) - assemble(a, ex)) /
                                  (1.0 + norm(assemble(a, ex))));
          err = std::max(err, norm(quad_rep_apply(x, y) - assemble(a, pq)) / (1.0 + nx * nx * ny));
          double tr_blocks = 0.0, det_blocks = 1.0;
          for (std::size_t b = 0; b < a.num_blocks(); ++b) {
            tr_blocks += trace(x.block(b));
            det_blocks *= det(x.block(b));
          }
          err = std::max(err, std::abs(trace(x) - tr_blocks));
          err = std::max(err, std::abs(det(x) - det_blocks) / (1.0 + std::abs(det_blocks)));
          tally.bound("direct_sum_blockwise" + tag, err, 1.0 + nx * ny, 1e-10);
        });
      }
    }
  }
}

void cone_suite(Tally& tally, std::size_t seeds, std::uint64_t base) {
  const auto algebras = suite_algebras();
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    const Algebra& a = algebras[ai];
    const std::string tag = "[" + a.name() + "]";
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng = make_rng(base, 200 + ai, s);

      guarded(tally, "P_preserves_order" + tag, [&] {
        const Element x = random_element(a, rng);
        const Element z = random_element(a, rng);
        const Element c = random_interior(a, rng);
        const Element y = z + c;  // y >= z
        const Element diff = quad_rep_apply(x, y) - quad_rep_apply(x, z);
        const auto [lo, hi] = lambda_extremes(diff);
        CheckResult r;
        r.margin = lo;
        r.scale = 1.0 + std::abs(hi);
        r.passed = lo >= -1e-9 * r.scale;
        tally.add("P_preserves_order" + tag, r);
      });

      guarded(tally, "inner_nonnegative_on_cone" + tag, [&] {
        const Element u = random_element(a, rng), v = random_element(a, rng);
        const Element x = jordan_product(u, u), y = jordan_product(v, v);
        CheckResult r;
        r.margin = inner(x, y);
        r.scale = 1.0 + norm(x) * norm(y);
        r.passed = r.margin >= -1e-12 * r.scale;
        tally.add("inner_nonnegative_on_cone" + tag, r);
      });

      guarded(tally, "operator_monotone" + tag, [&] {
        const Element x = random_interior(a, rng);
        const Element w = random_element(a, rng);
        tally.add("operator_monotone" + tag, check_ln_monotone(x, x + jordan_product(w, w)));
      });

      guarded(tally, "scaling_point" + tag, [&] {
        const Element x = random_interior(a, rng), y = random_interior(a, rng);
        const Element w = scaling_point(x, y);
        tally.bound("scaling_point" + tag, norm(quad_rep_apply(w, x) - y), 1.0 + norm(y), 1e-8);
        tally.bound("scaling_point_interior" + tag, in_interior(w) ? 0.0 : 1.0, 1.0, 0.0);
      });

      guarded(tally, "simplex_lin_max" + tag, [&] {
        const Element b = random_element(a, rng);
        const LinearMaximizer m = simplex_lin_max(b);
        double err = std::abs(inner(b, m.argmax) - m.value);
        err = std::max(err, std::abs(trace(m.argmax) - 1.0));
        for (int k = 0; k < 8; ++k) err = std::max(err, inner(b, random_feasible(a, rng)) - m.value);
        tally.bound("simplex_lin_max" + tag, err, 1.0 + norm(b), 1e-10);
      });
    }
  }
}

void objectives_suite(Tally& tally, std::size_t seeds, std::uint64_t base) {
  const auto families = suite_families();
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const std::string tag = "[" + families[fi].name + "]";
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng = make_rng(base, 300 + fi, s);
      guarded(tally, "instance" + tag, [&] {
        const ProblemInstance inst = families[fi].make(base * 7919 + s);
        const Algebra& k1 = inst.cone_algebra();
        const Objective& f = inst.objective();
        const Element x = random_feasible(k1, rng);
        const Element y = inst.map().apply(x);

        const double fy = f.value(y);
        double lh = 0.0;
        for (double t : {0.1, 1.0, 7.3}) lh = std::max(lh, std::abs(f.value(t * y) - fy - std::log(t)));
        tally.bound("log_homogeneity" + tag, lh, 1.0 + std::abs(fy), 1e-9);

        const Element gf = f.gradient(y);
        tally.bound("euler_identity" + tag, std::abs(inner(gf, y) - 1.0), 1.0, 1e-10);
        tally.bound("gradient_interior" + tag, in_interior(gf) ? 0.0 : 1.0, 1.0, 0.0);
        tally.bound("composite_euler_identity" + tag, std::abs(inner(inst.gradient(x), x) - 1.0), 1.0, 1e-10);

        tally.add("grad_fd" + tag, check_grad_fd(inst, x));

        const Element u = random_element(k1, rng);
        const Element v = random_element(inst.map().target(), rng);
        const double lhs = inner(inst.map().apply(u), v), rhs = inner(u, inst.map().adjoint(v));
        tally.bound("adjoint_identity" + tag, std::abs(lhs - rhs), 1.0 + std::abs(lhs), 1e-10);
      });
    }
  }
}

void inequalities_suite(Tally& tally, std::size_t seeds, std::uint64_t base) {
  const auto algebras = suite_algebras();
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    const Algebra& a = algebras[ai];
    const std::string tag = "[" + a.name() + "]";
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng = make_rng(base, 400 + ai, s);
      guarded(tally, "golden_thompson" + tag, [&] {
        const Element x = random_element(a, rng), y = random_element(a, rng);
        tally.add("golden_thompson" + tag, check_golden_thompson(x, y));
        tally.equality("golden_thompson_equality" + tag, check_golden_thompson(x, x), 1e-9);
        tally.equality("golden_thompson_equality" + tag, check_golden_thompson(x, Element::zero(a)), 1e-9);
      });
      guarded(tally, "ln_monotone" + tag, [&] {
        const Element x = random_interior(a, rng);
        const Element w = random_element(a, rng);
        tally.add("ln_monotone" + tag, check_ln_monotone(x, x + jordan_product(w, w)));
        tally.equality("ln_monotone_equality" + tag, check_ln_monotone(x, x), 1e-9);
      });
      guarded(tally, "cs_inequality" + tag, [&] {
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<Element> v;
        std::vector<double> al, be;
        for (int i = 0; i < 3; ++i) {
          v.push_back(random_interior(a, rng));
          al.push_back(nd(rng));
          be.push_back(nd(rng));
        }
        tally.add("cs_inequality" + tag, check_cs_inequality(v, al, be));
        tally.equality("cs_inequality_equality" + tag, check_cs_inequality({v[0]}, {al[0]}, {be[0]}), 1e-9);
      });
    }
  }

  const auto families = suite_families();
  const double lambdas[] = {0.25, 0.5, 0.75};
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const std::string tag = "[" + families[fi].name + "]";
    for (std::size_t s = 0; s < seeds; ++s) {
      Rng rng = make_rng(base, 500 + fi, s);
      guarded(tally, "grad_log_convexity" + tag, [&] {
        const ProblemInstance inst = families[fi].make(base * 7919 + s);
        const Algebra& k1 = inst.cone_algebra();
        const Element x = random_feasible(k1, rng), y = random_feasible(k1, rng);
        const Element u = random_primitive_idempotent(k1, rng);
        tally.add("grad_log_convexity" + tag, check_grad_log_convexity(inst, x, y, lambdas[s % 3], u));
        tally.equality("grad_log_convexity_equality" + tag, check_grad_log_convexity(inst, x, y, 0.0, u), 1e-9);
        tally.equality("grad_log_convexity_equality" + tag, check_grad_log_convexity(inst, x, y, 1.0, u), 1e-9);
        tally.equality("grad_log_convexity_equality" + tag, check_grad_log_convexity(inst, x, x, 0.5, u), 1e-9);
        tally.add("growth_bound" + tag, check_growth_bound(inst, x, random_feasible(k1, rng)));
        tally.equality("growth_bound_equality" + tag, check_growth_bound(inst, x, x), 1e-9);
      });
    }
  }
}

}  // namespace

bool SuiteReport::all_passed() const {
  for (const auto& c : checks) {
    if (c.passed != c.total) return false;
  }
  return !checks.empty();
}

std::vector<std::string> suite_names() { return {"eja", "cone", "objectives", "inequalities", "all"}; }

SuiteReport run_suite(const std::string& name, std::size_t seeds, std::uint64_t base_seed) {
  Tally tally;
  const bool all = name == "all";
  bool known = all;
  if (all || name == "eja") known = true, eja_suite(tally, seeds, base_seed);
  if (all || name == "cone") known = true, cone_suite(tally, seeds, base_seed);
  if (all || name == "objectives") known = true, objectives_suite(tally, seeds, base_seed);
  if (all || name == "inequalities") known = true, inequalities_suite(tally, seeds, base_seed);
  if (!known) throw std::invalid_argument("unknown suite '" + name + "' (expected eja, cone, objectives, inequalities or all)");
  return {name, tally.take()};
}

}  // namespace jmg
