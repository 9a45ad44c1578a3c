#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbd/errors.hpp"
#include "fbd/functionals.hpp"
#include "fbd/rng.hpp"

using namespace fbd;

namespace {

SpacePtr unit() { return make_interval_grid(0.0, 1.0, 64); }

GridFunction random_on(const SpacePtr& space, CounterRng& rng, double lo, double hi) {
  std::vector<double> v(space->size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return GridFunction(space, std::move(v));
}

std::vector<Functional> shipped() { return {phi_total_squared(), phi_squared_bias(), phi_neg_entropy()}; }

}  // namespace

TEST_CASE("total squared difference") {
  const auto phi = phi_total_squared();
  const auto one = GridFunction::constant(unit(), 1.0);
  CHECK(phi.value(one) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi.first_variation(one, one) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(phi.second_variation(one, one, one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("squared bias") {
  const auto phi = phi_squared_bias();
  const auto s = unit();
  CHECK(phi.value(GridFunction::constant(s, 2.0)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(phi.first_variation(GridFunction::constant(s, 1.0), GridFunction::constant(s, 3.0)) ==
        doctest::Approx(6.0).epsilon(1e-14));
  const auto one = GridFunction::constant(s, 1.0);
  CHECK(phi.second_variation(one, one, one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("negative entropy") {
  const auto phi = phi_neg_entropy();
  const auto s = unit();
  CHECK(phi.value(GridFunction::constant(s, 1.0)) == 0.0);
  CHECK(phi.value(GridFunction::constant(s, std::numbers::e)) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(phi.first_variation(GridFunction::constant(s, 1.0), GridFunction::constant(s, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("entropy guard") {
  const auto phi = phi_neg_entropy();
  const auto s = make_interval_grid(0.0, 1.0, 4);
  const GridFunction with_zero(s, {0.0, 1.0, 2.0, 3.0});
  // 0·ln 0 = 0 for the value itself.
  CHECK(phi.value(with_zero) == doctest::Approx(0.25 * (2.0 * std::log(2.0) + 3.0 * std::log(3.0))));
  CHECK_THROWS_AS(phi.first_variation_coeff(with_zero), DomainViolation);
  CHECK_THROWS_AS(phi.first_variation(with_zero, with_zero), DomainViolation);
  CHECK_THROWS_AS(phi.second_variation(with_zero, with_zero, with_zero), DomainViolation);
  CHECK_THROWS_AS(phi.value(GridFunction(s, {-1.0, 1.0, 1.0, 1.0})), DomainViolation);
}

TEST_CASE("pointwise square matches native values") {
  const auto phi = phi_from_pointwise(pointwise_square());
  CHECK(phi.value(GridFunction::constant(unit(), 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pointwise odd reflection below zero") {
  // s̃(x) = -s(-x) + 2 s(0) for x < 0; for s = x², s̃(-2) = -4.
  const auto phi = phi_from_pointwise(pointwise_square());
  const auto s = make_dirac({0.0});
  CHECK(phi.value(GridFunction(s, {-2.0})) == -4.0);
  CHECK(phi.value(GridFunction(s, {3.0})) == 9.0);
}

TEST_CASE("pointwise generator must be finite on the range") {
  PointwiseSpec bad{[](double x) { return std::log(x - 1.0); }, [](double x) { return 1.0 / (x - 1.0); }, NAN, NAN};
  const auto phi = phi_from_pointwise(bad);
  CHECK_THROWS_AS(phi.value(GridFunction::constant(unit(), 0.5)), DomainViolation);
}

TEST_CASE("pointwise generators are convex on probes") {
  CHECK_NOTHROW(check_pointwise_convexity(pointwise_square(), 1000, 10.0, 1));
  CHECK_NOTHROW(check_pointwise_convexity(pointwise_x_log_x(), 1000, 10.0, 2));
  PointwiseSpec concave{[](double x) { return std::sqrt(x); }, [](double x) { return 0.5 / std::sqrt(x); }, 0.0,
                        INFINITY};
  CHECK_THROWS_AS(check_pointwise_convexity(concave, 1000, 10.0, 3), InvalidArgument);
}

TEST_CASE("gateaux finite differences") {
  const auto s = unit();
  const auto one = GridFunction::constant(s, 1.0);
  CHECK(std::abs(gateaux_fd(phi_total_squared(), one, one, 1e-5) - 2.0) <= 1e-8);
  CHECK(std::abs(gateaux_fd(phi_squared_bias(), one, GridFunction::constant(s, 3.0), 1e-5) - 6.0) <= 1e-7);
  for (const auto& phi : shipped()) {
    CHECK(gateaux_fd(phi, one, GridFunction::constant(s, 0.0), 1e-5) == 0.0);
  }
  CHECK_THROWS_AS(gateaux_fd(phi_total_squared(), one, one, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gateaux_fd(phi_neg_entropy(), GridFunction::constant(s, 1e-7), one, 1e-5), DomainViolation);
}

TEST_CASE("first variation agrees with finite differences") {
  CounterRng rng(303);
  for (const auto& phi : shipped()) {
    for (int trial = 0; trial < 50; ++trial) {
      const GridFunction g = random_on(unit(), rng, 0.5, 3.0);
      const GridFunction a = random_on(unit(), rng, -1.0, 1.0);
      const double analytic = phi.first_variation(g, a);
      const double fd = gateaux_fd(phi, g, a, default_fd_step(g));
      CHECK_MESSAGE(std::abs(fd - analytic) <= 1e-6 * (1.0 + std::abs(analytic)), phi.name);
    }
  }
}

TEST_CASE("first variation is linear in the direction") {
  CounterRng rng(404);
  for (const auto& phi : shipped()) {
    const GridFunction g = random_on(unit(), rng, 0.5, 3.0);
    const GridFunction a = random_on(unit(), rng, -1.0, 1.0);
    const GridFunction b = random_on(unit(), rng, -1.0, 1.0);
    const double alpha = 2.75;
    const double lhs = phi.first_variation(g, alpha * a + b);
    const double rhs = alpha * phi.first_variation(g, a) + phi.first_variation(g, b);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * (std::abs(alpha * phi.first_variation(g, a)) + std::abs(rhs) + 1.0));
  }
}

TEST_CASE("second variation is symmetric") {
  CounterRng rng(505);
  for (const auto& phi : shipped()) {
    for (int trial = 0; trial < 20; ++trial) {
      const GridFunction g = random_on(unit(), rng, 0.5, 3.0);
      const GridFunction a = random_on(unit(), rng, -1.0, 1.0);
      const GridFunction b = random_on(unit(), rng, -1.0, 1.0);
      const double ab = phi.second_variation(g, a, b);
      const double ba = phi.second_variation(g, b, a);
      CHECK(std::abs(ab - ba) <= 1e-12 * std::max({std::abs(ab), std::abs(ba), 1e-300}));
    }
  }
}

TEST_CASE("second variation is the variation of the first") {
  CounterRng rng(606);
  for (const auto& phi : shipped()) {
    const GridFunction g = random_on(unit(), rng, 0.5, 3.0);
    const GridFunction a = random_on(unit(), rng, -1.0, 1.0);
    const GridFunction b = random_on(unit(), rng, -1.0, 1.0);
    const double exact = phi.second_variation(g, b, a);
    // One-sided differences: the error should shrink linearly with t.
    double prev_err = INFINITY;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      const double fd = (phi.first_variation(g + t * b, a) - phi.first_variation(g, a)) / t;
      const double err = std::abs(fd - exact);
      CHECK(err <= 10.0 * t * (1.0 + std::abs(exact)));
      CHECK(err <= prev_err + 1e-12);
      prev_err = err;
    }
  }
}

TEST_CASE("strong positivity") {
  CounterRng rng(707);
  const auto s = unit();
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction g = random_on(s, rng, 0.2, 3.0);
    const GridFunction signed_a = random_on(s, rng, -1.0, 1.0);
    const GridFunction pos_a = random_on(s, rng, 0.0, 1.0);
    const double l2sq = std::pow(lp_norm(signed_a, 2.0), 2.0);
    CHECK(phi_total_squared().second_variation(g, signed_a, signed_a) >= 2.0 * l2sq * (1.0 - 1e-12));
    const double l1 = lp_norm(pos_a, 1.0);
    CHECK(phi_squared_bias().second_variation(g, pos_a, pos_a) >= 2.0 * l1 * l1 * (1.0 - 1e-12));
    const double k = 1.0 / g.sup_norm();
    CHECK(phi_neg_entropy().second_variation(g, signed_a, signed_a) >= k * l2sq * (1.0 - 1e-12));
  }
}

TEST_CASE("value is midpoint convex") {
  CounterRng rng(808);
  for (const auto& phi : shipped()) {
    for (int trial = 0; trial < 100; ++trial) {
      const GridFunction f = random_on(unit(), rng, 0.01, 3.0);
      const GridFunction g = random_on(unit(), rng, 0.01, 3.0);
      CHECK(phi.value(0.5 * (f + g)) <= 0.5 * (phi.value(f) + phi.value(g)) + 1e-12);
    }
  }
}

TEST_CASE("pointwise second variation by finite differences") {
  CounterRng rng(909);
  const auto native = phi_total_squared();
  const auto pw = phi_from_pointwise(pointwise_square());
  const auto native_e = phi_neg_entropy();
  const auto pw_e = phi_from_pointwise(pointwise_x_log_x());
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction g = random_on(unit(), rng, 0.5, 3.0);
    const GridFunction a = random_on(unit(), rng, -1.0, 1.0);
    const GridFunction b = random_on(unit(), rng, -1.0, 1.0);
    const double exact = native.second_variation(g, b, a);
    CHECK(std::abs(pw.second_variation(g, b, a) - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    const double exact_e = native_e.second_variation(g, b, a);
    CHECK(std::abs(pw_e.second_variation(g, b, a) - exact_e) <= 1e-6 * (1.0 + std::abs(exact_e)));
  }
}

TEST_CASE("linear combination and affine shift") {
  const auto s = unit();
  CounterRng rng(1001);
  const GridFunction g = random_on(s, rng, 0.5, 2.0);
  const GridFunction a = random_on(s, rng, -1.0, 1.0);
  const auto tsd = phi_total_squared();
  const auto bias = phi_squared_bias();
  const auto combo = linear_combination(0.7, tsd, 1.9, bias);
  CHECK(combo.value(g) == doctest::Approx(0.7 * tsd.value(g) + 1.9 * bias.value(g)).epsilon(1e-14));
  CHECK(combo.first_variation(g, a) ==
        doctest::Approx(0.7 * tsd.first_variation(g, a) + 1.9 * bias.first_variation(g, a)).epsilon(1e-13));

  const GridFunction w = random_on(s, rng, -1.0, 1.0);
  const auto shifted = affine_shift(tsd, w, 4.5);
  CHECK(shifted.value(g) == doctest::Approx(tsd.value(g) + inner(w, g) + 4.5).epsilon(1e-14));
  CHECK(shifted.first_variation(g, a) == doctest::Approx(tsd.first_variation(g, a) + inner(w, a)).epsilon(1e-13));

  const auto guarded = linear_combination(1.0, tsd, 1.0, phi_neg_entropy());
  CHECK_FALSE(guarded.domain_guard(GridFunction::constant(s, 0.0)));
}
