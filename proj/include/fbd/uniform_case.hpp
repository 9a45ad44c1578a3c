#pragma once

#include <span>
#include <vector>

namespace fbd {

/// I.i.d. draws from a scaled uniform on [0, θ]. All points are positive.
class Sample {
 public:
  explicit Sample(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  int n() const noexcept { return static_cast<int>(points_.size()); }
  double x_max() const noexcept { return x_max_; }

 private:
  std::vector<double> points_;
  double x_max_ = 0.0;
};

/// Density 1/scale on [0, scale].
struct UniformDensity {
  double scale = 1.0;

  double operator()(double x) const noexcept { return (x >= 0.0 && x <= scale) ? 1.0 / scale : 0.0; }
};

/// Posterior-mean density g*(x) = n·X^n / ((n+1)·max(x, X)^{n+1}) for x ≥ 0.
struct UnrestrictedDensity {
  int n = 1;
  double x_max = 1.0;

  double operator()(double x) const noexcept;
};

struct GammaPrior {
  double t1 = 1.0;
  double t2 = 1.0;
};

/// Measure placed on the one-parameter family of scaled uniforms.
enum class Metric { Fisher, Lebesgue };

UniformDensity mle(const Sample& s);

/// Posterior mean of θ under a Gamma(t1, t2) prior:
///   ∫_X^∞ θ·θ^{-(n+t1+1)} e^{-1/(θ t2)} dθ / ∫_X^∞ θ^{-(n+t1+1)} e^{-1/(θ t2)} dθ.
/// With u = 1/θ both integrals run over [0, 1/X] and are evaluated in the
/// log domain, so large n does not underflow.
double bayes_parameter(const Sample& s, GammaPrior prior);
double bayes_parameter(int n, double x_max, GammaPrior prior);

/// Closed-form minimizer of the expected total squared difference over
/// uniform densities: 2^{1/n}·X (Fisher) or 2^{1/(n+1/2)}·X (Lebesgue).
UniformDensity bayes_uniform_restricted(const Sample& s, Metric metric);
UniformDensity bayes_uniform_restricted(int n, double x_max, Metric metric);

/// J(b) = ∫_X^∞ |b - a|/(ab) · a^{-n} · w(a) da with w(a) = a^{-3/2}
/// (Lebesgue arc element) or 1/a (Fisher element). Lebesgue is evaluated in
/// closed form, Fisher by quadrature.
double restricted_objective(double b, const Sample& s, Metric metric);
double restricted_objective(double b, int n, double x_max, Metric metric);

/// Same objective by quadrature for either metric.
double restricted_objective_quadrature(double b, int n, double x_max, Metric metric);

/// Golden-section minimizer of `restricted_objective` over [X, 10X].
double minimize_restricted_objective(int n, double x_max, Metric metric);

/// I(a) = 1/a² for the scaled uniform family.
double fisher_information(double a);

UnrestrictedDensity bayes_unrestricted(const Sample& s);

/// L²-closest uniform density to g*: scale 2^{1/n}·X.
UniformDensity project_to_uniform(const UnrestrictedDensity& d);

/// The same projection by golden-section search on ∫(h_a - g*)² dx over
/// a ∈ [X, 10X].
UniformDensity project_to_uniform_numeric(const UnrestrictedDensity& d);

/// ∫(1_{[0,b]}/b - 1_{[0,θ]}/θ)² dx = |b - θ|/(bθ).
double uniform_sq_error(double b, double theta);

/// ∫₀^∞ (g*(x) - 1_{[0,θ]}(x)/θ)² dx.
double unrestricted_sq_error(const UnrestrictedDensity& d, double theta);

}  // namespace fbd
