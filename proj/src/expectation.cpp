#include "fbd/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fbd/bregman.hpp"
#include "fbd/errors.hpp"
#include "fbd/rng.hpp"

namespace fbd {

Ensemble::Ensemble(std::vector<GridFunction> members, std::vector<double> probs)
    : members_(std::move(members)), probs_(std::move(probs)) {
  if (members_.empty()) throw InvalidArgument("ensemble needs at least one member");
  if (members_.size() != probs_.size()) throw InvalidArgument("ensemble: members/probabilities length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    require_same_space(members_.front(), members_[i]);
    require_nonnegative(members_[i], "ensemble member");
    if (!(probs_[i] > 0.0)) throw InvalidArgument("ensemble probabilities must be positive");
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "ensemble probabilities sum to " << total << ", not 1";
    throw InvalidArgument(os.str());
  }
}

Ensemble Ensemble::uniform(std::vector<GridFunction> members) {
  const std::size_t n = members.size();
  if (n == 0) throw InvalidArgument("ensemble needs at least one member");
  return Ensemble(std::move(members), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

GridFunction ensemble_mean(const Ensemble& e) {
  std::vector<double> acc(e.space()->size(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto v = e.members()[i].values();
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += e.probs()[i] * v[j];
  }
  return GridFunction(e.space(), std::move(acc));
}

double expected_divergence(const Functional& phi, const Ensemble& e, const GridFunction& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) sum += e.probs()[i] * divergence(phi, e.members()[i], g).value;
  return sum;
}

GridFunction objective_gradient(const Functional& phi, const Ensemble& e, const GridFunction& g) {
  require_same_space(g, e.members().front());
  phi.require_in_domain(g, "objective gradient base point");
  const SpacePtr& space = g.space();
  const auto w = space->weights();
  std::vector<GridFunction> offsets;
  offsets.reserve(e.size());
  for (const auto& f : e.members()) offsets.push_back(f - g);

  std::vector<double> grad(space->size(), 0.0);
  std::vector<double> unit(space->size(), 0.0);
  for (std::size_t j = 0; j < grad.size(); ++j) {
    if (!(w[j] > 0.0)) continue;
    unit[j] = 1.0;
    const GridFunction direction(space, unit);
    double raw = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) raw -= e.probs()[i] * phi.second_variation(g, offsets[i], direction);
    grad[j] = raw / w[j];
    unit[j] = 0.0;
  }
  return GridFunction(space, std::move(grad));
}

MinimizerCheck verify_mean_minimizer(const Functional& phi, const Ensemble& e, int trials, double eps,
                                     std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("verify_mean_minimizer needs at least one trial");
  if (!(eps > 0.0)) throw InvalidArgument("verify_mean_minimizer needs eps > 0");
  const GridFunction mean = ensemble_mean(e);
  phi.require_in_domain(mean, "ensemble mean");

  MinimizerCheck check;
  check.mean_objective = expected_divergence(phi, e, mean);
  check.min_perturbed_objective = std::numeric_limits<double>::infinity();
  check.pass = true;

  CounterRng rng(seed);
  const std::size_t n = mean.size();
  for (int t = 0; t < trials; ++t) {
    std::vector<double> eta(n);
    double sup = 0.0;
    for (double& v : eta) {
      v = rng.uniform(-1.0, 1.0);
      sup = std::max(sup, std::abs(v));
    }
    for (double& v : eta) v /= sup;
    std::vector<double> point(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (mean[j] + eps * eta[j] <= 0.0) eta[j] = std::abs(eta[j]);
      point[j] = mean[j] + eps * eta[j];
    }
    GridFunction perturbed(mean.space(), std::move(point));
    if (phi.domain_guard && !phi.domain_guard(perturbed)) {
      throw DomainViolation("verify_mean_minimizer: no admissible perturbation around the mean");
    }
    const double j = expected_divergence(phi, e, perturbed);
    check.min_perturbed_objective = std::min(check.min_perturbed_objective, j);
    if (!(check.mean_objective <= j + 1e-12)) check.pass = false;
  }
  return check;
}

DescentResult descend_to_minimizer(const Functional& phi, const Ensemble& e, const GridFunction& init,
                                   const DescentOptions& opts) {
  require_same_space(init, e.members().front());
  phi.require_in_domain(init, "descent initial point");

  auto project = [&](const GridFunction& g) {
    GridFunction clamped = g.map([](double v) { return std::max(v, 0.0); });
    if (phi.domain_guard && !phi.domain_guard(clamped)) {
      clamped = clamped.map([floor = opts.guard_floor](double v) { return std::max(v, floor); });
    }
    return clamped;
  };

  DescentResult result{init, expected_divergence(phi, e, init), 0, false};
  int consecutive_increases = 0;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    result.iterations = iter + 1;
    const GridFunction grad = objective_gradient(phi, e, result.solution);
    double step = 1.0;
    bool accepted = false;
    GridFunction candidate = result.solution;
    double candidate_objective = result.objective;
    while (step > 1e-20) {
      candidate = project(result.solution - step * grad);
      candidate_objective = expected_divergence(phi, e, candidate);
      const double predicted = inner(grad, candidate - result.solution);
      if (candidate_objective <= result.objective + opts.armijo * predicted) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No decrease along the projected gradient: stationary to machine precision.
      result.converged = true;
      return result;
    }
    const double moved = (candidate - result.solution).sup_norm();
    consecutive_increases = candidate_objective > result.objective ? consecutive_increases + 1 : 0;
    if (consecutive_increases >= 10) {
      throw NumericFailure("descend_to_minimizer: objective increased on 10 consecutive accepted steps");
    }
    result.solution = std::move(candidate);
    result.objective = candidate_objective;
    if (moved < opts.tol) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace fbd
