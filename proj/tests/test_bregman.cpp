#include <doctest.h>

#include <cmath>

#include "fbd/bregman.hpp"
#include "fbd/errors.hpp"
#include "fbd/numeric.hpp"
#include "fbd/rng.hpp"

using namespace fbd;

namespace {

SpacePtr unit() { return make_interval_grid(0.0, 1.0, 64); }

GridFunction random_on(const SpacePtr& space, CounterRng& rng, double lo, double hi) {
  std::vector<double> v(space->size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return GridFunction(space, std::move(v));
}

// Closed forms written out node by node, independent of Functional.
double tsd_closed(const GridFunction& f, const GridFunction& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.space()->weights()[i] * (f[i] - g[i]) * (f[i] - g[i]);
  return s;
}

double bias_closed(const GridFunction& f, const GridFunction& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.space()->weights()[i] * (f[i] - g[i]);
  return s * s;
}

double kl_closed(const GridFunction& f, const GridFunction& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double fi = f[i], gi = g[i];
    s += f.space()->weights()[i] * ((fi > 0.0 ? fi * std::log(fi / gi) : 0.0) - fi + gi);
  }
  return s;
}

double scale_of(const DivergenceReport& r) {
  return std::abs(r.phi_f) + std::abs(r.phi_g) + std::abs(r.first_variation_term);
}

double sum_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

std::vector<double> grad_sum_sq(std::span<const double> x) {
  std::vector<double> g(x.begin(), x.end());
  for (double& v : g) v *= 2.0;
  return g;
}

double sum_xlogx(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * std::log(v);
  return s;
}

std::vector<double> grad_xlogx(std::span<const double> x) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = 1.0 + std::log(x[i]);
  return g;
}

}  // namespace

TEST_CASE("divergence examples") {
  const auto s = unit();
  auto r = divergence(phi_total_squared(), GridFunction::constant(s, 1.5), GridFunction::constant(s, 0.5));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.value == r.phi_f - r.phi_g - r.first_variation_term);

  r = divergence(phi_squared_bias(), GridFunction::constant(s, 2.0), GridFunction::constant(s, 1.0));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));

  r = divergence(phi_neg_entropy(), GridFunction::constant(s, 2.0), GridFunction::constant(s, 1.0));
  CHECK(r.value == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-13));

  CounterRng rng(11);
  const GridFunction f = random_on(s, rng, 0.1, 2.0);
  for (const auto& phi : {phi_total_squared(), phi_squared_bias(), phi_neg_entropy()}) {
    CHECK(std::abs(divergence(phi, f, f).value) <= 1e-12);
  }
}

TEST_CASE("divergence matches closed forms on random pairs") {
  CounterRng rng(12);
  const auto s = unit();
  for (int trial = 0; trial < 100; ++trial) {
    const GridFunction f = random_on(s, rng, 0.05, 3.0);
    const GridFunction g = random_on(s, rng, 0.05, 3.0);
    auto r = divergence(phi_total_squared(), f, g);
    CHECK(std::abs(r.value - tsd_closed(f, g)) <= 1e-13 * scale_of(r));
    r = divergence(phi_squared_bias(), f, g);
    CHECK(std::abs(r.value - bias_closed(f, g)) <= 1e-13 * scale_of(r));
    r = divergence(phi_neg_entropy(), f, g);
    CHECK(std::abs(r.value - kl_closed(f, g)) <= 1e-13 * scale_of(r));
  }
}

TEST_CASE("divergence error paths") {
  const auto s = make_interval_grid(0.0, 1.0, 4);
  const auto other = make_interval_grid(0.0, 1.0, 5);
  const auto tsd = phi_total_squared();
  CHECK_THROWS_AS(divergence(tsd, GridFunction::constant(s, 1.0), GridFunction::constant(other, 1.0)),
                  IncompatibleSpace);
  // Signed arguments are allowed (the conjugate functional of a Legendre
  // pair lives on transformed, possibly negative, functions).
  CHECK(divergence(tsd, GridFunction::constant(s, -1.0), GridFunction::constant(s, 1.0)).value == doctest::Approx(4.0));

  const auto entropy = phi_neg_entropy();
  const GridFunction g_zero(s, {0.0, 1.0, 1.0, 1.0});
  // f has mass where g has none: +∞, flagged.
  const auto r = divergence(entropy, GridFunction::constant(s, 1.0), g_zero);
  CHECK(r.infinite);
  CHECK(std::isinf(r.value));
  // f vanishes with g, but g is still outside the guard for the variation.
  CHECK_THROWS_AS(divergence(entropy, GridFunction(s, {0.0, 2.0, 2.0, 2.0}), g_zero), DomainViolation);
  // f may have zeros when g is positive.
  const auto ok = divergence(entropy, GridFunction(s, {0.0, 1.0, 1.0, 1.0}), GridFunction::constant(s, 1.0));
  CHECK(ok.value == doctest::Approx(0.25));
}

TEST_CASE("non-negativity and separation") {
  CounterRng rng(13);
  const auto s = unit();
  for (const auto& phi : {phi_total_squared(), phi_squared_bias(), phi_neg_entropy()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const GridFunction f = random_on(s, rng, 0.01, 3.0);
      const GridFunction g = random_on(s, rng, 0.01, 3.0);
      const auto r = divergence(phi, f, g);
      CHECK(r.value >= -1e-10 * (1.0 + std::abs(r.phi_f) + std::abs(r.phi_g)));
    }
  }
  // Squared bias vanishes whenever ∫f = ∫g, so separation is only asserted
  // for the strictly convex pair.
  for (const auto& phi : {phi_total_squared(), phi_neg_entropy()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const GridFunction f = random_on(s, rng, 0.01, 3.0);
      const GridFunction g = random_on(s, rng, 0.01, 3.0);
      if ((f - g).sup_norm() >= 0.01) CHECK(divergence(phi, f, g).value >= 1e-8);
    }
  }
}

TEST_CASE("squared bias is bounded by the squared L1 distance") {
  CounterRng rng(14);
  const auto s = unit();
  for (int trial = 0; trial < 200; ++trial) {
    const GridFunction f = random_on(s, rng, 0.0, 3.0);
    const GridFunction g = random_on(s, rng, 0.0, 3.0);
    const double l1 = lp_norm(f - g, 1.0);
    CHECK(divergence(phi_squared_bias(), f, g).value <= l1 * l1 + 1e-12);
  }
}

TEST_CASE("convexity in the first argument") {
  CounterRng rng(15);
  const auto s = unit();
  for (const auto& phi : {phi_total_squared(), phi_squared_bias(), phi_neg_entropy()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const GridFunction f1 = random_on(s, rng, 0.01, 3.0);
      const GridFunction f2 = random_on(s, rng, 0.01, 3.0);
      const GridFunction g = random_on(s, rng, 0.01, 3.0);
      const double mid = divergence(phi, 0.5 * (f1 + f2), g).value;
      CHECK(mid <= 0.5 * (divergence(phi, f1, g).value + divergence(phi, f2, g).value) + 1e-10);
    }
  }
}

TEST_CASE("divergence is linear in the functional") {
  CounterRng rng(16);
  const auto s = unit();
  const auto tsd = phi_total_squared();
  const auto bias = phi_squared_bias();
  for (int trial = 0; trial < 100; ++trial) {
    const double c1 = rng.uniform(0.1, 5.0), c2 = rng.uniform(0.1, 5.0);
    const auto combo = linear_combination(c1, tsd, c2, bias);
    const GridFunction f = random_on(s, rng, 0.0, 3.0);
    const GridFunction g = random_on(s, rng, 0.0, 3.0);
    const auto r = divergence(combo, f, g);
    const double expect = c1 * divergence(tsd, f, g).value + c2 * divergence(bias, f, g).value;
    CHECK(std::abs(r.value - expect) <= 1e-12 * std::max({std::abs(expect), scale_of(r) * 1e-2, 1e-300}) +
                                            1e-15 * scale_of(r));
  }
}

TEST_CASE("affine shifts leave the divergence unchanged") {
  CounterRng rng(17);
  const auto s = unit();
  const GridFunction w = random_on(s, rng, -2.0, 2.0);
  for (const auto& phi : {phi_total_squared(), phi_squared_bias(), phi_neg_entropy()}) {
    const auto shifted = affine_shift(phi, w, -3.25);
    for (int trial = 0; trial < 50; ++trial) {
      const GridFunction f = random_on(s, rng, 0.01, 3.0);
      const GridFunction g = random_on(s, rng, 0.01, 3.0);
      const auto a = divergence(phi, f, g);
      const auto b = divergence(shifted, f, g);
      CHECK(std::abs(a.value - b.value) <= 1e-12 * std::max(std::abs(a.value), 1e-3 * scale_of(b)));
    }
  }
}

TEST_CASE("generalized pythagorean identity") {
  CounterRng rng(18);
  const auto s = unit();
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction f = random_on(s, rng, 0.0, 3.0);
    const GridFunction g = random_on(s, rng, 0.0, 3.0);
    const GridFunction h = random_on(s, rng, 0.0, 3.0);
    const auto r = pythagorean_residual(phi_total_squared(), f, g, h);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-10);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction f = random_on(s, rng, 0.05, 3.0);
    const GridFunction g = random_on(s, rng, 0.05, 3.0);
    const GridFunction h = random_on(s, rng, 0.05, 3.0);
    const auto r = pythagorean_residual(phi_neg_entropy(), f, g, h);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-9);
  }
  const GridFunction same = GridFunction::constant(s, 1.3);
  const auto r = pythagorean_residual(phi_total_squared(), same, same, same);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
}

TEST_CASE("equidistant functions lie on the separation hyperplane") {
  CounterRng rng(19);
  const auto s = unit();
  const auto tsd = phi_total_squared();
  const GridFunction g1 = random_on(s, rng, 0.1, 2.0);
  const GridFunction g2 = random_on(s, rng, 0.1, 2.0);
  const auto plane = separation_hyperplane(tsd, g1, g2);

  // Midpoint: equidistant by symmetry.
  CHECK(std::abs(plane.evaluate(0.5 * (g1 + g2)) - plane.offset) <= 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    // Along the segment g1 → g2 shifted by a random offset, the difference
    // of distances changes sign; solve for the crossing.
    const GridFunction bump = random_on(s, rng, 0.0, 0.5);
    auto at = [&](double t) { return (1.0 - t) * g1 + t * g2 + bump; };
    auto gap = [&](double t) { return divergence(tsd, at(t), g1).value - divergence(tsd, at(t), g2).value; };
    if (gap(-1.0) * gap(2.0) > 0.0) continue;
    const double t = find_root(gap, -1.0, 2.0);
    CHECK(std::abs(plane.evaluate(at(t)) - plane.offset) <= 1e-9);
  }

  // Squared bias: scale a random f until its mass sits at the crossing.
  const auto bias = phi_squared_bias();
  const auto bias_plane = separation_hyperplane(bias, g1, g2);
  const GridFunction f = random_on(s, rng, 0.1, 2.0);
  auto gap = [&](double c) { return divergence(bias, c * f, g1).value - divergence(bias, c * f, g2).value; };
  const double c = find_root(gap, 0.0, 10.0);
  CHECK(std::abs(bias_plane.evaluate(c * f) - bias_plane.offset) <= 1e-9);

  CHECK_THROWS_AS(separation_hyperplane(tsd, g1, g1), DegenerateInput);
}

TEST_CASE("legendre duality") {
  CounterRng rng(20);
  const auto s = unit();
  const auto tsd = legendre_pair_tsd();
  const auto ent = legendre_pair_entropy();
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction f = random_on(s, rng, 0.05, 3.0);
    const GridFunction g = random_on(s, rng, 0.05, 3.0);

    for (const auto* pair : {&tsd, &ent}) {
      const GridFunction G = pair->transform(g);
      // φ[g] = -ψ[G] + ∫ g·G dν
      const double phi_g = pair->phi.value(g);
      CHECK(std::abs(phi_g - (-pair->psi.value(G) + inner(g, G))) <=
            1e-12 * (std::abs(phi_g) + std::abs(inner(g, G))));
    }

    const double d_tsd = divergence(tsd.phi, f, g).value;
    const double dual_tsd = divergence(tsd.psi, tsd.transform(g), tsd.transform(f)).value;
    CHECK(std::abs(d_tsd - dual_tsd) <= 1e-10 * std::max(d_tsd, 1.0));

    const double d_ent = divergence(ent.phi, f, g).value;
    const double dual_ent = divergence(ent.psi, ent.transform(g), ent.transform(f)).value;
    CHECK(std::abs(d_ent - dual_ent) <= 1e-8 * std::max(d_ent, 1.0));
  }
  const GridFunction same = random_on(s, rng, 0.5, 1.0);
  CHECK(divergence(tsd.psi, tsd.transform(same), tsd.transform(same)).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(ent.transform(GridFunction::constant(s, 0.0)), DomainViolation);
}

TEST_CASE("vector bregman") {
  const std::vector<double> x{1.0, 2.0}, zero{0.0, 0.0};
  CHECK(vector_bregman(grad_sum_sq, sum_sq, x, zero) == doctest::Approx(5.0));
  CHECK(vector_bregman(grad_sum_sq, sum_sq, x, x) == 0.0);
  const std::vector<double> ones{1.0, 1.0}, twos{2.0, 2.0};
  CHECK(vector_bregman(grad_xlogx, sum_xlogx, ones, twos) == doctest::Approx(2.0 - 2.0 * std::log(2.0)).epsilon(1e-14));
  const std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(vector_bregman(grad_sum_sq, sum_sq, x, three), InvalidArgument);
}

TEST_CASE("dirac measures reduce to vector bregman") {
  CounterRng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> pts, f, g;
    const int n = 3 + trial % 5;
    for (int i = 0; i < n; ++i) {
      pts.push_back(i + rng.uniform(0.0, 0.5));
      f.push_back(rng.uniform(0.05, 3.0));
      g.push_back(rng.uniform(0.05, 3.0));
    }
    CHECK(check_dirac_equivalence(sum_sq, grad_sum_sq, pts, f, g) <= 1e-12);
    CHECK(check_dirac_equivalence(sum_xlogx, grad_xlogx, pts, f, g) <= 1e-10);
    CHECK(check_dirac_equivalence(sum_sq, grad_sum_sq, pts, f, f) == 0.0);
  }
  // Unsorted points: the values travel with their points.
  const std::vector<double> pts{2.0, 0.0, 1.0}, f{1.0, 2.0, 3.0}, g{0.5, 0.25, 2.0};
  CHECK(check_dirac_equivalence(sum_xlogx, grad_xlogx, pts, f, g) <= 1e-12);
  const std::vector<double> short_f{1.0};
  CHECK_THROWS_AS(check_dirac_equivalence(sum_sq, grad_sum_sq, pts, short_f, g), InvalidArgument);
}

TEST_CASE("pointwise functionals reproduce native divergences") {
  CounterRng rng(22);
  const auto s = unit();
  const auto sq = pointwise_square();
  const auto xl = pointwise_x_log_x();
  const auto phi_sq = phi_from_pointwise(sq);
  const auto phi_xl = phi_from_pointwise(xl);
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f = random_on(s, rng, 0.01, 3.0);
    const GridFunction g = random_on(s, rng, 0.01, 3.0);
    const double direct_sq = pointwise_bregman(sq, f, g);
    const auto via_sq = divergence(phi_sq, f, g);
    CHECK(std::abs(via_sq.value - direct_sq) <= 1e-10 * std::max(direct_sq, 1e-2 * scale_of(via_sq)));
    CHECK(std::abs(divergence(phi_total_squared(), f, g).value - via_sq.value) <= 1e-10 * scale_of(via_sq));

    const double direct_xl = pointwise_bregman(xl, f, g);
    const auto via_xl = divergence(phi_xl, f, g);
    CHECK(std::abs(via_xl.value - direct_xl) <= 1e-8 * std::max(direct_xl, 1e-2 * scale_of(via_xl)));
    CHECK(std::abs(divergence(phi_neg_entropy(), f, g).value - via_xl.value) <= 1e-8 * std::max(direct_xl, 1e-2));
  }
}
