#include "fbd/bregman.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fbd/errors.hpp"

namespace fbd {

DivergenceReport divergence(const Functional& phi, const GridFunction& f, const GridFunction& g) {
  require_same_space(f, g);
  DivergenceReport report;
  if (phi.infinite_divergence && phi.infinite_divergence(f, g)) {
    report.value = std::numeric_limits<double>::infinity();
    report.infinite = true;
    return report;
  }
  phi.require_in_domain(g, "divergence second argument");
  report.phi_f = phi.value(f);
  report.phi_g = phi.value(g);
  report.first_variation_term = inner(phi.first_variation_coeff(g), f - g);
  report.value = report.phi_f - report.phi_g - report.first_variation_term;
  return report;
}

double pointwise_bregman(const PointwiseSpec& spec, const GridFunction& f, const GridFunction& g) {
  require_same_space(f, g);
  require_nonnegative(f, "pointwise divergence first argument");
  require_nonnegative(g, "pointwise divergence second argument");
  auto s = [&spec](double x) { return x == 0.0 ? spec.limit_at_zero : spec.s(x); };
  auto s_prime = [&spec](double x) { return x == 0.0 ? spec.limit_prime_at_zero : spec.s_prime(x); };
  const auto w = f.space()->weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double slope = s_prime(g[i]);
    if (!std::isfinite(slope)) throw DomainViolation("pointwise divergence: s'(g) is not finite");
    sum += w[i] * (s(f[i]) - s(g[i]) - slope * (f[i] - g[i]));
  }
  return sum;
}

double vector_bregman(const VectorGradient& grad_phi, const VectorValue& phi_tilde, std::span<const double> x,
                      std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("vector_bregman: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  const std::vector<double> grad = grad_phi(y);
  if (grad.size() != y.size()) throw InvalidArgument("vector_bregman: gradient has the wrong dimension");
  double linear = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) linear += grad[i] * (x[i] - y[i]);
  return phi_tilde(x) - phi_tilde(y) - linear;
}

Functional functional_from_vector(VectorValue phi_tilde, VectorGradient grad_phi,
                                  std::function<bool(std::span<const double>)> domain) {
  Functional phi;
  phi.name = "dirac_vector";
  phi.value = [phi_tilde](const GridFunction& f) { return phi_tilde(f.values()); };
  phi.first_variation_coeff = [grad_phi](const GridFunction& g) {
    const auto masses = g.space()->weights();
    std::vector<double> c = grad_phi(g.values());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!(masses[i] > 0.0)) throw DomainViolation("vector functional needs positive point masses");
      c[i] /= masses[i];
    }
    return GridFunction(g.space(), std::move(c));
  };
  phi.domain_guard = [domain](const GridFunction& g) { return !domain || domain(g.values()); };
  phi.second_variation =
      second_variation_by_fd(phi.first_variation_coeff, [domain](const GridFunction&, const GridFunction& h) {
        return !domain || domain(h.values());
      });
  return phi;
}

double check_dirac_equivalence(const VectorValue& phi_tilde, const VectorGradient& grad_phi,
                               std::span<const double> points, std::span<const double> f_values,
                               std::span<const double> g_values) {
  if (f_values.size() != points.size() || g_values.size() != points.size()) {
    throw InvalidArgument("dirac equivalence: vectors must match the number of points");
  }
  // make_dirac sorts nodes; carry values along with their points.
  const SpacePtr space = make_dirac(std::vector<double>(points.begin(), points.end()));
  const auto nodes = space->nodes();
  std::vector<double> f_sorted(points.size()), g_sorted(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k] == points[i]) {
        f_sorted[k] = f_values[i];
        g_sorted[k] = g_values[i];
        break;
      }
    }
  }
  const Functional phi = functional_from_vector(phi_tilde, grad_phi);
  const double functional_route =
      divergence(phi, GridFunction(space, f_sorted), GridFunction(space, g_sorted)).value;
  const double vector_route = vector_bregman(grad_phi, phi_tilde, f_sorted, g_sorted);
  return std::abs(functional_route - vector_route);
}

PythagoreanResidual pythagorean_residual(const Functional& phi, const GridFunction& f, const GridFunction& g,
                                         const GridFunction& h) {
  require_same_space(f, g);
  require_same_space(f, h);
  const GridFunction diff = f - g;
  PythagoreanResidual r;
  r.lhs = divergence(phi, f, h).value;
  r.rhs = divergence(phi, f, g).value + divergence(phi, g, h).value + phi.first_variation(g, diff) -
          phi.first_variation(h, diff);
  return r;
}

Hyperplane separation_hyperplane(const Functional& phi, const GridFunction& g1, const GridFunction& g2) {
  require_same_space(g1, g2);
  bool identical = true;
  for (std::size_t i = 0; i < g1.size() && identical; ++i) identical = g1[i] == g2[i];
  if (identical) throw DegenerateInput("separation hyperplane needs distinct g1 and g2");
  phi.require_in_domain(g1, "hyperplane g1");
  phi.require_in_domain(g2, "hyperplane g2");

  const GridFunction c1 = phi.first_variation_coeff(g1);
  const GridFunction c2 = phi.first_variation_coeff(g2);
  const double offset = phi.value(g1) - phi.value(g2) - inner(c1, g1) + inner(c2, g2);
  return Hyperplane{c2 - c1, offset};
}

LegendrePair legendre_pair_tsd() {
  Functional psi;
  psi.name = "tsd_conjugate";
  psi.value = [](const GridFunction& G) { return 0.25 * inner(G, G); };
  psi.first_variation_coeff = [](const GridFunction& G) { return 0.5 * G; };
  psi.second_variation = [](const GridFunction&, const GridFunction& b, const GridFunction& a) {
    return 0.5 * inner(a, b);
  };
  psi.domain_guard = [](const GridFunction&) { return true; };
  return LegendrePair{[](const GridFunction& g) { return 2.0 * g; }, phi_total_squared(), std::move(psi)};
}

LegendrePair legendre_pair_entropy() {
  Functional psi;
  psi.name = "entropy_conjugate";
  auto dual_density = [](const GridFunction& G) { return G.map([](double x) { return std::exp(x - 1.0); }); };
  psi.value = [dual_density](const GridFunction& G) { return integrate(dual_density(G)); };
  psi.first_variation_coeff = dual_density;
  psi.second_variation = [dual_density](const GridFunction& G, const GridFunction& b, const GridFunction& a) {
    return inner(dual_density(G).hadamard(a), b);
  };
  psi.domain_guard = [](const GridFunction&) { return true; };
  auto transform = [](const GridFunction& g) {
    if (!g.is_strictly_positive()) throw DomainViolation("entropy Legendre transform needs g > 0 at every node");
    return g.map([](double x) { return 1.0 + std::log(x); });
  };
  return LegendrePair{transform, phi_neg_entropy(), std::move(psi)};
}

}  // namespace fbd
