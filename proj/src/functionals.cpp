#include "fbd/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbd/errors.hpp"
#include "fbd/rng.hpp"

namespace fbd {

namespace {

bool always(const GridFunction&) { return true; }

double x_log_x(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double Functional::first_variation(const GridFunction& g, const GridFunction& a) const {
  require_in_domain(g, "first variation base point");
  return inner(first_variation_coeff(g), a);
}

void Functional::require_in_domain(const GridFunction& g, const char* what) const {
  if (domain_guard && !domain_guard(g)) {
    throw DomainViolation(std::string(what) + " is outside the domain of " + name);
  }
}

Functional phi_total_squared() {
  Functional phi;
  phi.name = "total_squared_difference";
  phi.value = [](const GridFunction& g) { return inner(g, g); };
  phi.first_variation_coeff = [](const GridFunction& g) { return 2.0 * g; };
  phi.second_variation = [](const GridFunction&, const GridFunction& b, const GridFunction& a) {
    return 2.0 * inner(a, b);
  };
  phi.domain_guard = always;
  return phi;
}

Functional phi_squared_bias() {
  Functional phi;
  phi.name = "squared_bias";
  phi.value = [](const GridFunction& g) {
    const double m = integrate(g);
    return m * m;
  };
  phi.first_variation_coeff = [](const GridFunction& g) {
    return GridFunction::constant(g.space(), 2.0 * integrate(g));
  };
  phi.second_variation = [](const GridFunction& g, const GridFunction& b, const GridFunction& a) {
    require_same_space(g, a);
    require_same_space(g, b);
    return 2.0 * integrate(a) * integrate(b);
  };
  phi.domain_guard = always;
  return phi;
}

Functional phi_neg_entropy() {
  Functional phi;
  phi.name = "negative_entropy";
  phi.value = [](const GridFunction& g) {
    require_nonnegative(g, "entropy argument");
    return integrate(g.map(x_log_x));
  };
  phi.domain_guard = [](const GridFunction& g) { return g.is_strictly_positive(); };
  phi.first_variation_coeff = [](const GridFunction& g) {
    if (!g.is_strictly_positive()) throw DomainViolation("entropy first variation needs g > 0 at every node");
    return g.map([](double x) { return 1.0 + std::log(x); });
  };
  phi.second_variation = [](const GridFunction& g, const GridFunction& b, const GridFunction& a) {
    if (!g.is_strictly_positive()) throw DomainViolation("entropy second variation needs g > 0 at every node");
    require_same_space(g, a);
    require_same_space(g, b);
    const auto w = g.space()->weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * a[i] * b[i] / g[i];
    return sum;
  };
  phi.infinite_divergence = [](const GridFunction& f, const GridFunction& g) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (g[i] == 0.0 && f[i] > 0.0) return true;
    }
    return false;
  };
  return phi;
}

PointwiseSpec pointwise_square() {
  return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; }, 0.0, 0.0};
}

PointwiseSpec pointwise_x_log_x() {
  return {x_log_x, [](double x) { return 1.0 + std::log(x); }, 0.0, -std::numeric_limits<double>::infinity()};
}

void check_pointwise_convexity(const PointwiseSpec& spec, int probes, double upper, std::uint64_t seed) {
  CounterRng rng(seed);
  for (int i = 0; i < probes; ++i) {
    const double x = rng.uniform(0.0, upper);
    const double y = rng.uniform(0.0, upper);
    const double mid = spec.s(0.5 * (x + y));
    const double chord = 0.5 * (spec.s(x) + spec.s(y));
    if (!(mid <= chord + 1e-12 * (1.0 + std::abs(chord)))) {
      std::ostringstream os;
      os << "pointwise generator is not convex between " << x << " and " << y;
      throw InvalidArgument(os.str());
    }
  }
}

Functional phi_from_pointwise(PointwiseSpec spec) {
  if (!spec.s || !spec.s_prime) throw InvalidArgument("pointwise spec needs s and s'");
  auto extended = [spec](double x) {
    if (x > 0.0) return spec.s(x);
    if (x == 0.0) return spec.limit_at_zero;
    return -spec.s(-x) + 2.0 * spec.limit_at_zero;
  };
  auto extended_prime = [spec](double x) {
    if (x > 0.0) return spec.s_prime(x);
    if (x == 0.0) return spec.limit_prime_at_zero;
    return spec.s_prime(-x);
  };

  Functional phi;
  phi.name = "pointwise";
  phi.value = [extended](const GridFunction& f) {
    const GridFunction sf = f.map(extended);
    for (double v : sf.values()) {
      if (!std::isfinite(v)) throw DomainViolation("pointwise generator is not finite on the function's range");
    }
    return integrate(sf);
  };
  phi.domain_guard = [extended_prime](const GridFunction& f) {
    return std::all_of(f.values().begin(), f.values().end(),
                       [&](double x) { return std::isfinite(extended_prime(x)); });
  };
  phi.first_variation_coeff = [extended_prime](const GridFunction& f) {
    GridFunction c = f.map(extended_prime);
    for (double v : c.values()) {
      if (!std::isfinite(v)) throw DomainViolation("pointwise derivative is not finite on the function's range");
    }
    return c;
  };
  // Steps may not push a node across zero: the reflected extension is
  // concave on the negative half-line.
  phi.second_variation = second_variation_by_fd(phi.first_variation_coeff,
                                                [](const GridFunction& g, const GridFunction& h) {
                                                  for (std::size_t i = 0; i < g.size(); ++i) {
                                                    if ((g[i] > 0.0 && h[i] <= 0.0) || (g[i] < 0.0 && h[i] >= 0.0)) {
                                                      return false;
                                                    }
                                                  }
                                                  return true;
                                                });
  return phi;
}

Functional linear_combination(double c1, const Functional& phi1, double c2, const Functional& phi2) {
  Functional phi;
  phi.name = phi1.name + "+" + phi2.name;
  phi.value = [=](const GridFunction& g) { return c1 * phi1.value(g) + c2 * phi2.value(g); };
  phi.first_variation_coeff = [=](const GridFunction& g) {
    return c1 * phi1.first_variation_coeff(g) + c2 * phi2.first_variation_coeff(g);
  };
  phi.second_variation = [=](const GridFunction& g, const GridFunction& b, const GridFunction& a) {
    return c1 * phi1.second_variation(g, b, a) + c2 * phi2.second_variation(g, b, a);
  };
  phi.domain_guard = [=](const GridFunction& g) {
    return (!phi1.domain_guard || phi1.domain_guard(g)) && (!phi2.domain_guard || phi2.domain_guard(g));
  };
  if (phi1.infinite_divergence || phi2.infinite_divergence) {
    phi.infinite_divergence = [=](const GridFunction& f, const GridFunction& g) {
      return (phi1.infinite_divergence && phi1.infinite_divergence(f, g)) ||
             (phi2.infinite_divergence && phi2.infinite_divergence(f, g));
    };
  }
  return phi;
}

Functional affine_shift(const Functional& phi, GridFunction w, double c) {
  Functional shifted = phi;
  shifted.name = phi.name + "+affine";
  shifted.value = [value = phi.value, w, c](const GridFunction& g) { return value(g) + inner(w, g) + c; };
  shifted.first_variation_coeff = [coeff = phi.first_variation_coeff, w](const GridFunction& g) {
    return coeff(g) + w;
  };
  return shifted;
}

Functional::SecondVariation second_variation_by_fd(
    Functional::Coefficient coeff,
    std::function<bool(const GridFunction& g, const GridFunction& h)> admissible) {
  return [coeff = std::move(coeff), admissible = std::move(admissible)](
             const GridFunction& g, const GridFunction& b, const GridFunction& a) {
    require_same_space(g, a);
    require_same_space(g, b);
    const double bnorm = b.sup_norm();
    if (bnorm == 0.0) return 0.0;
    const double t = default_fd_step(g) / bnorm;
    const GridFunction up = g + t * b;
    const GridFunction down = g - t * b;
    const bool up_ok = !admissible || admissible(g, up);
    const bool down_ok = !admissible || admissible(g, down);
    if (up_ok && down_ok) return (inner(coeff(up), a) - inner(coeff(down), a)) / (2.0 * t);
    if (up_ok) return (inner(coeff(up), a) - inner(coeff(g), a)) / t;
    if (down_ok) return (inner(coeff(g), a) - inner(coeff(down), a)) / t;
    throw DomainViolation("second variation: no admissible finite-difference step");
  };
}

double default_fd_step(const GridFunction& g) { return 1e-5 * (g.sup_norm() + 1.0); }

double gateaux_fd(const Functional& phi, const GridFunction& g, const GridFunction& a, double step) {
  if (!(step > 0.0)) throw InvalidArgument("gateaux_fd needs a positive step");
  require_same_space(g, a);
  const GridFunction up = g + step * a;
  const GridFunction down = g - step * a;
  phi.require_in_domain(g, "gateaux base point");
  phi.require_in_domain(up, "gateaux forward point");
  phi.require_in_domain(down, "gateaux backward point");
  return (phi.value(up) - phi.value(down)) / (2.0 * step);
}

}  // namespace fbd
