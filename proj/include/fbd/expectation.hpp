#pragma once

#include <cstdint>
#include <vector>

#include "fbd/functionals.hpp"
#include "fbd/measure.hpp"

namespace fbd {

/// Finite ensemble {(fᵢ, pᵢ)} of nonnegative grid functions on one space.
class Ensemble {
 public:
  Ensemble(std::vector<GridFunction> members, std::vector<double> probs);

  /// Equal weights.
  static Ensemble uniform(std::vector<GridFunction> members);

  const std::vector<GridFunction>& members() const noexcept { return members_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const SpacePtr& space() const noexcept { return members_.front().space(); }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<GridFunction> members_;
  std::vector<double> probs_;
};

/// Pointwise Σ pᵢ fᵢ.
GridFunction ensemble_mean(const Ensemble& e);

/// J(g) = Σ pᵢ d_φ[fᵢ, g], summed in member order. +∞ propagates.
double expected_divergence(const Functional& phi, const Ensemble& e, const GridFunction& g);

/// Riesz representative of δJ[g;·]: the node function r with
/// δJ[g;a] = ∫ r·a dν, assembled from -Σ pᵢ δ²φ[g; fᵢ - g, ·].
GridFunction objective_gradient(const Functional& phi, const Ensemble& e, const GridFunction& g);

struct MinimizerCheck {
  double mean_objective = 0.0;
  double min_perturbed_objective = 0.0;
  bool pass = false;
};

/// Compares J at the ensemble mean with J at `trials` admissible
/// perturbations mean + eps·η, ‖η‖_∞ = 1. Components of η that would leave
/// the nonnegative cone (or the guard) are flipped to point inward.
MinimizerCheck verify_mean_minimizer(const Functional& phi, const Ensemble& e, int trials, double eps,
                                     std::uint64_t seed = 0x5EED);

struct DescentOptions {
  int max_iters = 20000;
  double tol = 1e-12;
  double armijo = 1e-4;
  // Lower bound applied after projection when the functional's guard
  // rejects zeros.
  double guard_floor = 1e-9;
};

struct DescentResult {
  GridFunction solution;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient descent on J over node values, backtracking from a
/// unit step. Stops when a step moves g by less than `tol` in sup norm.
DescentResult descend_to_minimizer(const Functional& phi, const Ensemble& e, const GridFunction& init,
                                   const DescentOptions& opts = {});

}  // namespace fbd
