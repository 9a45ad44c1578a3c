#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fbd/functionals.hpp"
#include "fbd/measure.hpp"

namespace fbd {

/// d_φ[f,g] = φ[f] - φ[g] - δφ[g;f-g] with its three ingredients.
struct DivergenceReport {
  double value = 0.0;
  double phi_f = 0.0;
  double phi_g = 0.0;
  double first_variation_term = 0.0;
  // Set when f has mass where the functional's divergence is unbounded
  // (entropy with g = 0 < f); `value` is then +∞ and the rest are unset.
  bool infinite = false;
};

DivergenceReport divergence(const Functional& phi, const GridFunction& f, const GridFunction& g);

/// Direct pointwise form ∫ s(f) - s(g) - s'(g)(f - g) dν for nonnegative f
/// and g with s'(g) finite. Does not go through `Functional`.
double pointwise_bregman(const PointwiseSpec& spec, const GridFunction& f, const GridFunction& g);

using VectorValue = std::function<double(std::span<const double>)>;
using VectorGradient = std::function<std::vector<double>(std::span<const double>)>;

/// φ̃(x) - φ̃(y) - ∇φ̃(y)ᵀ(x - y).
double vector_bregman(const VectorGradient& grad_phi, const VectorValue& phi_tilde, std::span<const double> x,
                      std::span<const double> y);

/// φ[f] = φ̃(f(c₁), …, f(cₙ)) on a Dirac space with positive masses. The
/// first-variation coefficient at node i is ∂ᵢφ̃ / massᵢ.
Functional functional_from_vector(VectorValue phi_tilde, VectorGradient grad_phi,
                                  std::function<bool(std::span<const double>)> domain = {});

/// Builds ν = Σ δ_{cᵢ}, evaluates the divergence through `divergence` and
/// through `vector_bregman`, and returns |difference|.
double check_dirac_equivalence(const VectorValue& phi_tilde, const VectorGradient& grad_phi,
                               std::span<const double> points, std::span<const double> f_values,
                               std::span<const double> g_values);

struct PythagoreanResidual {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = d[f,h]; rhs = d[f,g] + d[g,h] + δφ[g;f-g] - δφ[h;f-g].
PythagoreanResidual pythagorean_residual(const Functional& phi, const GridFunction& f, const GridFunction& g,
                                         const GridFunction& h);

/// {f : d[f,g₁] = d[f,g₂]} = {f : ∫ coeff·f dν = offset}.
struct Hyperplane {
  GridFunction coeff;
  double offset = 0.0;

  double evaluate(const GridFunction& f) const { return inner(coeff, f); }
};

Hyperplane separation_hyperplane(const Functional& phi, const GridFunction& g1, const GridFunction& g2);

/// Legendre transform of φ: g ↦ G with δφ[g;a] = ∫ G·a dν and the conjugate
/// ψ with φ[g] = -ψ[G] + ∫ g·G dν. Then d_φ[f,g] = d_ψ[G,F].
struct LegendrePair {
  std::function<GridFunction(const GridFunction&)> transform;
  Functional phi;
  Functional psi;
};

/// G = 2g, ψ[G] = ∫ G²/4 dν.
LegendrePair legendre_pair_tsd();

/// G = 1 + ln g, ψ[G] = ∫ e^{G-1} dν.
LegendrePair legendre_pair_entropy();

}  // namespace fbd
