#include "fbd/suites.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "fbd/bregman.hpp"
#include "fbd/expectation.hpp"
#include "fbd/functionals.hpp"
#include "fbd/numeric.hpp"
#include "fbd/uniform_case.hpp"

namespace fbd {

namespace {

// Tracks the worst value of a residual against its bound across many trials.
class Tally {
 public:
  Tally(std::string name, double bound) : name_(std::move(name)), bound_(bound) {}

  void observe(double excess_ratio) {
    if (!(excess_ratio <= 1.0)) pass_ = false;
    worst_ = std::max(worst_, std::isnan(excess_ratio) ? INFINITY : excess_ratio);
    ++count_;
  }

  void fail(const std::string& why) {
    pass_ = false;
    note_ = why;
  }

  CheckResult result() const {
    std::ostringstream os;
    os.precision(3);
    os << count_ << " trials, worst residual/bound " << worst_ << " (bound " << bound_ << ")";
    if (!note_.empty()) os << "; " << note_;
    return {name_, pass_ && count_ > 0, os.str()};
  }

 private:
  std::string name_;
  double bound_;
  double worst_ = 0.0;
  int count_ = 0;
  bool pass_ = true;
  std::string note_;
};

double rel_excess(double a, double b, double rel, double scale) {
  const double denom = rel * std::max({std::abs(a), std::abs(b), scale});
  const double diff = std::abs(a - b);
  return denom > 0.0 ? diff / denom : (diff == 0.0 ? 0.0 : INFINITY);
}

double cancellation_scale(const DivergenceReport& r) {
  return std::abs(r.phi_f) + std::abs(r.phi_g) + std::abs(r.first_variation_term);
}

struct Named {
  const char* label;
  Functional phi;
};

std::vector<Named> shipped() {
  return {{"tsd", phi_total_squared()}, {"bias", phi_squared_bias()}, {"entropy", phi_neg_entropy()}};
}

double sum_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

std::vector<double> grad_sum_sq(std::span<const double> x) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
  return g;
}

double sum_x_log_x(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v > 0.0 ? v * std::log(v) : 0.0;
  return s;
}

std::vector<double> grad_sum_x_log_x(std::span<const double> x) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = 1.0 + std::log(x[i]);
  return g;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) noexcept {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

GridFunction random_function(const SpacePtr& space, CounterRng& rng, double lo, double hi) {
  std::vector<double> v(space->size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return GridFunction(space, std::move(v));
}

bool close_rel(double a, double b, double rel, double scale) noexcept { return rel_excess(a, b, rel, scale) <= 1.0; }

std::vector<CheckResult> run_property_suite(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const SpacePtr grid = make_interval_grid(0.0, 1.0, opts.grid_cells);
  const auto phis = shipped();

  for (std::size_t k = 0; k < phis.size(); ++k) {
    const auto& [label, phi] = phis[k];
    const std::string tag = std::string(label) + ": ";
    CounterRng rng(CounterRng::derive_key(opts.seed, 1, k));

    Tally nonneg(tag + "non-negativity", 1e-10);
    Tally identity(tag + "d(f,f) = 0", 1e-12);
    Tally convex(tag + "convexity in f", 1e-10);
    Tally linear(tag + "linearity in phi", 1e-12);
    Tally affine(tag + "affine-shift invariance", 1e-12);
    Tally pythagoras(tag + "generalized Pythagorean identity", 1e-9);
    Tally hyperplane(tag + "equidistance hyperplane", 1e-9);
    Tally fd(tag + "first variation vs central difference", 1e-6);

    const Functional& partner = phis[(k + 1) % phis.size()].phi;
    const Functional combo = linear_combination(0.7, phi, 1.9, partner);
    const GridFunction shift_w = random_function(grid, rng, -1.0, 1.0);
    const Functional shifted = affine_shift(phi, shift_w, rng.uniform(-2.0, 2.0));

    for (int i = 0; i < opts.pairs; ++i) {
      const GridFunction f = random_function(grid, rng, 0.1, 2.0);
      const GridFunction f2 = random_function(grid, rng, 0.1, 2.0);
      const GridFunction g = random_function(grid, rng, 0.1, 2.0);
      const GridFunction h = random_function(grid, rng, 0.1, 2.0);

      const DivergenceReport d = divergence(phi, f, g);
      const double scale = 1.0 + std::abs(d.phi_f) + std::abs(d.phi_g);
      nonneg.observe(std::max(0.0, -d.value) / (1e-10 * scale));
      identity.observe(std::abs(divergence(phi, f, f).value) / 1e-12);

      const GridFunction mid = 0.5 * (f + f2);
      const double lhs = divergence(phi, mid, g).value;
      const double rhs = 0.5 * (d.value + divergence(phi, f2, g).value);
      convex.observe(std::max(0.0, lhs - rhs) / 1e-10);

      const DivergenceReport dc = divergence(combo, f, g);
      const DivergenceReport dp = divergence(partner, f, g);
      linear.observe(rel_excess(dc.value, 0.7 * d.value + 1.9 * dp.value, 1e-12,
                                cancellation_scale(dc) + 0.7 * cancellation_scale(d) + 1.9 * cancellation_scale(dp)));

      const DivergenceReport ds = divergence(shifted, f, g);
      affine.observe(rel_excess(ds.value, d.value, 1e-12, cancellation_scale(ds) + cancellation_scale(d)));

      const PythagoreanResidual pr = pythagorean_residual(phi, f, g, h);
      pythagoras.observe(std::abs(pr.lhs - pr.rhs) / 1e-9);

      // Equidistant f on the curve (1-t)g + t h + t(1-t) r, bracketed by t = 0 and t = 1.
      const GridFunction bump = random_function(grid, rng, 0.0, 1.0);
      auto on_curve = [&](double t) { return (1.0 - t) * g + t * h + (t * (1.0 - t)) * bump; };
      auto gap = [&](double t) {
        const GridFunction x = on_curve(t);
        return divergence(phi, x, g).value - divergence(phi, x, h).value;
      };
      try {
        const double t_star = find_root(gap, 0.0, 1.0);
        const Hyperplane plane = separation_hyperplane(phi, g, h);
        hyperplane.observe(std::abs(plane.evaluate(on_curve(t_star)) - plane.offset) / 1e-9);
      } catch (const std::exception& e) {
        hyperplane.fail(e.what());
      }

      if (i < 50) {
        const GridFunction a = random_function(grid, rng, -1.0, 1.0);
        const double analytic = phi.first_variation(g, a);
        const double numeric = gateaux_fd(phi, g, a, default_fd_step(g));
        fd.observe(std::abs(numeric - analytic) / (1e-6 * (1.0 + std::abs(analytic))));
      }
    }
    for (const Tally* t : {&nonneg, &identity, &convex, &linear, &affine, &pythagoras, &hyperplane, &fd}) {
      out.push_back(t->result());
    }
  }

  // Legendre duality: d_φ[f,g] = d_ψ[G,F].
  {
    CounterRng rng(CounterRng::derive_key(opts.seed, 2));
    const struct {
      const char* name;
      LegendrePair pair;
      double rel;
    } duals[] = {{"tsd: dual divergence", legendre_pair_tsd(), 1e-10},
                 {"entropy: dual divergence", legendre_pair_entropy(), 1e-8}};
    for (const auto& [name, pair, rel] : duals) {
      Tally tally(name, rel);
      for (int i = 0; i < opts.pairs; ++i) {
        const GridFunction f = random_function(grid, rng, 0.1, 2.0);
        const GridFunction g = random_function(grid, rng, 0.1, 2.0);
        const DivergenceReport primal = divergence(pair.phi, f, g);
        const DivergenceReport dual = divergence(pair.psi, pair.transform(g), pair.transform(f));
        tally.observe(rel_excess(primal.value, dual.value, rel, cancellation_scale(primal) + cancellation_scale(dual)));
      }
      out.push_back(tally.result());
    }
  }

  // Dirac measures reduce to the vector divergence.
  {
    CounterRng rng(CounterRng::derive_key(opts.seed, 3));
    Tally sq("dirac: squared norm equals vector Bregman", 1e-10);
    Tally ent("dirac: sum x ln x equals vector Bregman", 1e-10);
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
      std::vector<double> points, f, g;
      for (std::size_t j = 0; j < n; ++j) {
        points.push_back(static_cast<double>(j) + rng.uniform(0.0, 0.9));
        f.push_back(rng.uniform(0.1, 3.0));
        g.push_back(rng.uniform(0.1, 3.0));
      }
      sq.observe(check_dirac_equivalence(sum_sq, grad_sum_sq, points, f, g) / 1e-10);
      ent.observe(check_dirac_equivalence(sum_x_log_x, grad_sum_x_log_x, points, f, g) / 1e-10);
    }
    out.push_back(sq.result());
    out.push_back(ent.result());
  }

  // Pointwise generators reproduce the native functionals.
  {
    CounterRng rng(CounterRng::derive_key(opts.seed, 4));
    const struct {
      const char* name;
      PointwiseSpec spec;
      Functional native;
    } cases[] = {{"pointwise x^2", pointwise_square(), phi_total_squared()},
                 {"pointwise x ln x", pointwise_x_log_x(), phi_neg_entropy()}};
    for (const auto& [name, spec, native] : cases) {
      Tally tally(std::string(name) + ": matches direct integral and native functional", 1e-8);
      const Functional built = phi_from_pointwise(spec);
      for (int i = 0; i < 20; ++i) {
        const GridFunction f = random_function(grid, rng, 0.1, 2.0);
        const GridFunction g = random_function(grid, rng, 0.1, 2.0);
        const DivergenceReport d = divergence(built, f, g);
        const double direct = pointwise_bregman(spec, f, g);
        const DivergenceReport dn = divergence(native, f, g);
        tally.observe(std::max(rel_excess(d.value, direct, 1e-8, cancellation_scale(d)),
                               rel_excess(d.value, dn.value, 1e-8, cancellation_scale(d) + cancellation_scale(dn))));
      }
      out.push_back(tally.result());
    }
  }
  return out;
}

std::vector<CheckResult> run_theorem_suite(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  const SpacePtr grid = make_interval_grid(0.0, 1.0, opts.grid_cells);
  const auto phis = shipped();
  for (std::size_t k = 0; k < phis.size(); ++k) {
    const auto& [label, phi] = phis[k];
    const std::string tag = std::string(label) + ": ";
    CounterRng rng(CounterRng::derive_key(opts.seed, 10, k));

    std::vector<GridFunction> members;
    for (int i = 0; i < 5; ++i) members.push_back(random_function(grid, rng, 0.1, 2.0));
    std::vector<double> probs(5);
    double total = 0.0;
    for (double& p : probs) total += (p = rng.uniform(0.5, 1.5));
    for (double& p : probs) p /= total;
    probs.back() = 1.0 - (probs[0] + probs[1] + probs[2] + probs[3]);
    const Ensemble ensemble(members, probs);
    const GridFunction mean = ensemble_mean(ensemble);

    const MinimizerCheck local = verify_mean_minimizer(phi, ensemble, 100, 1e-2, opts.seed + k);
    std::ostringstream os;
    os.precision(17);
    os << "J(mean) = " << local.mean_objective << ", smallest perturbed J = " << local.min_perturbed_objective;
    out.push_back({tag + "mean beats 100 local perturbations", local.pass, os.str()});

    Tally global(tag + "mean beats 500 random admissible g", 1e-12);
    for (int i = 0; i < 500; ++i) {
      const GridFunction g = random_function(grid, rng, 0.05, 2.5);
      global.observe(std::max(0.0, local.mean_objective - expected_divergence(phi, ensemble, g)) / 1e-12);
    }
    out.push_back(global.result());

    Tally descent(tag + "descent reaches J(mean)", 1e-8);
    for (int i = 0; i < 5; ++i) {
      const GridFunction init = random_function(grid, rng, 0.2, 2.0);
      const DescentResult r = descend_to_minimizer(phi, ensemble, init);
      descent.observe(std::abs(r.objective - local.mean_objective) / 1e-8);
    }
    out.push_back(descent.result());

    // The objective pins the minimizer down only where δ²φ is strongly
    // positive on all directions; squared bias sees ∫g alone.
    if (std::string(label) != "bias") {
      Tally where(tag + "descent lands on the mean (L1)", 1e-3);
      for (int i = 0; i < 5; ++i) {
        const GridFunction init = random_function(grid, rng, 0.2, 2.0);
        const DescentResult r = descend_to_minimizer(phi, ensemble, init);
        where.observe(lp_norm(r.solution - mean, 1.0) / 1e-3);
      }
      out.push_back(where.result());
    }
  }
  return out;
}

std::vector<CheckResult> run_case_study_suite(const SuiteOptions& opts) {
  std::vector<CheckResult> out;
  CounterRng rng(CounterRng::derive_key(opts.seed, 20));

  Tally lebesgue("restricted Lebesgue minimizer = 2^(1/(n+1/2)) X", 1e-6);
  Tally fisher("restricted Fisher minimizer = 2^(1/n) X", 1e-6);
  Tally projection("projection minimizer = 2^(1/n) X", 1e-6);
  Tally coincide("projection equals restricted Fisher estimate", 0.0);
  for (int n : {1, 2, 5, 10, 50}) {
    const double x_max = rng.uniform(0.2, 1.5);
    lebesgue.observe(rel_excess(minimize_restricted_objective(n, x_max, Metric::Lebesgue),
                                bayes_uniform_restricted(n, x_max, Metric::Lebesgue).scale, 1e-6, 0.0));
    fisher.observe(rel_excess(minimize_restricted_objective(n, x_max, Metric::Fisher),
                              bayes_uniform_restricted(n, x_max, Metric::Fisher).scale, 1e-6, 0.0));
    const UnrestrictedDensity d{n, x_max};
    projection.observe(
        rel_excess(project_to_uniform_numeric(d).scale, project_to_uniform(d).scale, 1e-6, 0.0));
    coincide.observe(project_to_uniform(d).scale == bayes_uniform_restricted(n, x_max, Metric::Fisher).scale ? 0.0
                                                                                                            : INFINITY);
  }
  for (const Tally* t : {&lebesgue, &fisher, &projection, &coincide}) out.push_back(t->result());

  Tally closed("Lebesgue closed-form J(b) vs quadrature", 1e-8);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform() * 60.0);
    const double x_max = rng.uniform(0.3, 1.2);
    const double b = x_max * rng.uniform(0.5, 4.0);
    closed.observe(rel_excess(restricted_objective(b, n, x_max, Metric::Lebesgue),
                              restricted_objective_quadrature(b, n, x_max, Metric::Lebesgue), 1e-8, 0.0));
  }
  out.push_back(closed.result());

  Tally norm("unrestricted density integrates to 1", 1e-6);
  for (int i = 0; i < 10; ++i) {
    const UnrestrictedDensity d{1 + static_cast<int>(rng.uniform() * 100.0), rng.uniform(0.2, 2.0)};
    const double plateau = integrate_adaptive(d, 0.0, d.x_max).value;
    // Beyond X the density is a power law: integrate in ln x, then add the tail from 1e6.
    const double body =
        integrate_adaptive([&](double s) { return d(std::exp(s)) * std::exp(s); }, std::log(d.x_max), std::log(1e6),
                           1e-12)
            .value;
    const double tail = d(1e6) * 1e6 / d.n;
    norm.observe(std::abs(plateau + body + tail - 1.0) / 1e-6);
  }
  out.push_back(norm.result());

  // Independent reference: the ratio of regularized lower incomplete gammas.
  Tally gamma("Bayes parameter estimate vs incomplete gamma", 1e-8);
  for (int n : {1, 5, 50}) {
    for (double t2 : {1.0, 3.0, 100.0}) {
      const double x_max = rng.uniform(0.5, 1.0);
      const double t1 = 1.0;
      const double k = n + t1;
      const double x = 1.0 / (t2 * x_max);
      const double reference =
          boost::math::gamma_p(k - 1.0, x) / (t2 * (k - 1.0) * boost::math::gamma_p(k, x));
      gamma.observe(rel_excess(bayes_parameter(n, x_max, {t1, t2}), reference, 1e-8, 0.0));
    }
  }
  out.push_back(gamma.result());

  {
    bool ok = true;
    std::ostringstream os;
    os.precision(17);
    for (int n : {155, 1000, 10000}) {
      try {
        const double theta = bayes_parameter(n, 0.999, {1.0, 1.0});
        ok = ok && std::isfinite(theta) && theta > 0.999;
        os << "n=" << n << ": " << theta << "  ";
      } catch (const std::exception& e) {
        ok = false;
        os << "n=" << n << ": " << e.what() << "  ";
      }
    }
    out.push_back({"Bayes parameter estimate finite for large n", ok, os.str()});
  }
  return out;
}

}  // namespace fbd
