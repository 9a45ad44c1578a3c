#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fbd/measure.hpp"

namespace fbd {

/// A strictly convex functional on grid functions together with its first
/// and second variations.
///
/// The first variation is carried as an integrand coefficient c_g, so that
/// δφ[g;a] = ∫ c_g·a dν. The second variation evaluates the symmetric
/// bilinear form δ²φ[g;b,a].
///
/// `domain_guard` is the set on which the variations are defined. `value`
/// may accept a wider set (the entropy functional evaluates at zeros with
/// 0·ln 0 = 0). `infinite_divergence`, when set, flags argument pairs whose
/// divergence is +∞ rather than an error.
struct Functional {
  using Value = std::function<double(const GridFunction&)>;
  using Coefficient = std::function<GridFunction(const GridFunction&)>;
  using SecondVariation = std::function<double(const GridFunction& g, const GridFunction& b, const GridFunction& a)>;
  using Guard = std::function<bool(const GridFunction&)>;
  using PairPredicate = std::function<bool(const GridFunction& f, const GridFunction& g)>;

  std::string name;
  Value value;
  Coefficient first_variation_coeff;
  SecondVariation second_variation;
  Guard domain_guard;
  PairPredicate infinite_divergence;

  /// δφ[g;a]. Throws DomainViolation outside the guard.
  double first_variation(const GridFunction& g, const GridFunction& a) const;

  /// Throws DomainViolation if `g` fails the guard.
  void require_in_domain(const GridFunction& g, const char* what) const;
};

/// φ[g] = ∫ g² dν.
Functional phi_total_squared();

/// φ[g] = (∫ g dν)².
Functional phi_squared_bias();

/// φ[g] = ∫ g ln g dν (0·ln 0 = 0); variations need g > 0 at every node.
Functional phi_neg_entropy();

/// Scalar convex generator s for a pointwise functional φ[f] = ∫ s(f) dν.
struct PointwiseSpec {
  std::function<double(double)> s;
  std::function<double(double)> s_prime;
  double limit_at_zero = 0.0;
  double limit_prime_at_zero = 0.0;
};

/// s(x) = x².
PointwiseSpec pointwise_square();

/// s(x) = x ln x, with s(0) = 0 and s'(0) = -∞.
PointwiseSpec pointwise_x_log_x();

/// Throws InvalidArgument unless s is midpoint-convex on `probes` random
/// triples drawn from (0, upper].
void check_pointwise_convexity(const PointwiseSpec& spec, int probes, double upper, std::uint64_t seed);

/// Functional φ[f] = ∫ s̃(f) dν where s̃ extends s to negative arguments by
/// odd reflection, s̃(x) = -s(-x) + 2 s(0). The second variation is a
/// finite difference of the first.
Functional phi_from_pointwise(PointwiseSpec spec);

/// c₁φ₁ + c₂φ₂. The guard is the intersection of both guards.
Functional linear_combination(double c1, const Functional& phi1, double c2, const Functional& phi2);

/// φ[f] + ∫ w·f dν + c. Same divergence as φ.
Functional affine_shift(const Functional& phi, GridFunction w, double c);

/// Second variation as the directional derivative of δφ[·;a] along b,
/// using finite differences of `coeff`. Central difference when g ± t·b both
/// stay admissible (`admissible(g, h)`), one-sided otherwise.
Functional::SecondVariation second_variation_by_fd(
    Functional::Coefficient coeff,
    std::function<bool(const GridFunction& g, const GridFunction& h)> admissible);

/// Default finite-difference step: 1e-5 · (‖g‖_∞ + 1).
double default_fd_step(const GridFunction& g);

/// Central difference (φ[g + h·a] - φ[g - h·a]) / 2h, the Gâteaux derivative
/// along `a`. Independent of `first_variation_coeff`.
double gateaux_fd(const Functional& phi, const GridFunction& g, const GridFunction& a, double step);

}  // namespace fbd
