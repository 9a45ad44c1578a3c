#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbd/measure.hpp"
#include "fbd/rng.hpp"

namespace fbd {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results) noexcept;

/// Node values drawn uniformly from [lo, hi].
GridFunction random_function(const SpacePtr& space, CounterRng& rng, double lo, double hi);

/// |a - b| <= rel · max(|a|, |b|, scale). `scale` carries the magnitude of
/// the terms that cancelled to produce a and b.
bool close_rel(double a, double b, double rel, double scale = 0.0) noexcept;

struct SuiteOptions {
  std::uint64_t seed = 0xB2E6;
  std::size_t grid_cells = 64;
  int pairs = 200;
};

/// Divergence properties for the three shipped functionals: non-negativity,
/// identity, convexity in the first argument, linearity in φ, affine
/// invariance, the generalized Pythagorean identity, Legendre duality and
/// the equidistance hyperplane. Also first-variation finite-difference
/// agreement, the Dirac/vector equivalence and the pointwise equivalence.
std::vector<CheckResult> run_property_suite(const SuiteOptions& opts = {});

/// Mean-minimizer checks over random ensembles: local perturbations, global
/// sampling, descent to the minimum objective.
std::vector<CheckResult> run_theorem_suite(const SuiteOptions& opts = {});

/// Scaled-uniform estimators: closed forms against numeric minimization and
/// quadrature, normalization, the Bayes parameter estimate against the
/// regularized incomplete gamma function.
std::vector<CheckResult> run_case_study_suite(const SuiteOptions& opts = {});

}  // namespace fbd
