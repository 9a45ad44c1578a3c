#include "fbd/uniform_case.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbd/errors.hpp"
#include "fbd/numeric.hpp"

namespace fbd {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw InvalidArgument(os.str());
  }
}

void require_valid(int n, double x_max) {
  if (n < 1) throw InvalidArgument("sample size must be at least 1");
  require_positive(x_max, "x_max");
}

// log ∫₀^c u^p e^{-u/t} du for p > -1.
double log_power_exp_integral(double p, double c, double t) {
  if (!(p > -1.0)) throw InvalidArgument("power-exponential integral diverges at 0 for p <= -1");
  if (p < 0.0) {
    // v = u^{p+1} removes the singularity at the origin.
    const double q = p + 1.0;
    const double upper = std::pow(c, q);
    const auto r = integrate_adaptive([&](double v) { return std::exp(-std::pow(v, 1.0 / q) / t); }, 0.0, upper);
    return std::log(r.value) - std::log(q);
  }

  auto log_integrand = [&](double u) { return (p == 0.0 ? 0.0 : p * std::log(u)) - u / t; };
  const double peak = p > 0.0 ? std::min(p * t, c) : 0.0;
  const double shift = peak > 0.0 ? log_integrand(peak) : 0.0;
  double width;
  if (p > 0.0 && peak < c) {
    width = peak / std::sqrt(p);
  } else {
    const double slope = std::abs((p > 0.0 ? p / c : 0.0) - 1.0 / t);
    width = std::min(c, 1.0 / std::max(slope, 1.0 / c));
  }

  std::vector<double> cuts{0.0, c};
  for (double k : {1.0, 5.0, 10.0, 20.0, 40.0}) {
    for (double x : {peak - k * width, peak + k * width}) {
      if (x > 0.0 && x < c) cuts.push_back(x);
    }
  }
  if (peak > 0.0 && peak < c) cuts.push_back(peak);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Integrate in y = u - peak: p·ln(1 + y/peak) - y/t, so quadrature nodes
  // near the peak keep full relative precision.
  auto shifted = [&](double y) {
    if (peak <= 0.0) return y <= 0.0 ? std::exp(-shift) : std::exp(log_integrand(y));
    return std::exp(p * std::log1p(y / peak) - y / t);
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate_adaptive(shifted, cuts[i] - peak, cuts[i + 1] - peak, 1e-11, 1e-13 * width).value;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    std::ostringstream os;
    os.precision(17);
    os << "power-exponential integral degenerate: p=" << p << " c=" << c << " t=" << t << " sum=" << sum;
    throw NumericFailure(os.str());
  }
  return shift + std::log(sum);
}

// ∫₁^∞ |β - r|/(rβ) · r^{-power} dr, i.e. the restricted objective with
// a = X·r and b = X·β, divided by X^{-power}. Integrated in s = ln r with
// the power-law tail beyond the truncation point added in closed form.
double normalized_restricted_quadrature(double beta, double power) {
  const double decay = power - 1.0;
  auto integrand = [&](double s) {
    const double r = std::exp(s);
    return std::abs(beta - r) / beta * std::exp(-power * s);
  };
  // The integrand decays like e^{-decay·s}/β; stop once it is 1e-16 of its size near the kink.
  const double log_beta = std::log(beta);
  const double s_max = std::max(log_beta, 0.0) + 16.0 * std::log(10.0) / decay + 1.0;

  double total = 0.0;
  std::vector<double> cuts{0.0};
  if (log_beta > 0.0) cuts.push_back(log_beta);
  for (double s = cuts.back() + 1.0; s < s_max; s += 1.0) cuts.push_back(s);
  cuts.push_back(s_max);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_adaptive(integrand, cuts[i], cuts[i + 1], 1e-11, 1e-300).value;
  }
  const double a_max = std::exp(s_max);
  total += std::pow(a_max, -decay) / (decay * beta) - std::pow(a_max, -power) / power;
  return total;
}

double log_scale_factor(double x_max, double power) { return -power * std::log(x_max); }

double lebesgue_normalized(double beta, int n) {
  const double m = n + 1.5;
  const double r = 1.0 / beta;
  if (beta >= 1.0) return 2.0 / ((m - 1.0) * m) * std::pow(r, m) - r / (m - 1.0) + 1.0 / m;
  return r / (m - 1.0) - 1.0 / m;
}

double metric_power(int n, Metric metric) { return metric == Metric::Fisher ? n + 1.0 : n + 1.5; }

}  // namespace

Sample::Sample(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("sample must contain at least one point");
  for (double x : points_) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("sample points must be positive and finite");
  }
  x_max_ = *std::max_element(points_.begin(), points_.end());
}

double UnrestrictedDensity::operator()(double x) const noexcept {
  if (x < 0.0) return 0.0;
  const double plateau = static_cast<double>(n) / ((n + 1.0) * x_max);
  if (x <= x_max) return plateau;
  return plateau * std::pow(x_max / x, n + 1.0);
}

UniformDensity mle(const Sample& s) { return UniformDensity{s.x_max()}; }

double bayes_parameter(const Sample& s, GammaPrior prior) { return bayes_parameter(s.n(), s.x_max(), prior); }

double bayes_parameter(int n, double x_max, GammaPrior prior) {
  require_valid(n, x_max);
  require_positive(prior.t1, "prior t1");
  require_positive(prior.t2, "prior t2");
  const double c = 1.0 / x_max;
  const double k = n + prior.t1;
  const double log_num = log_power_exp_integral(k - 2.0, c, prior.t2);
  const double log_den = log_power_exp_integral(k - 1.0, c, prior.t2);
  const double theta = std::exp(log_num - log_den);
  if (!std::isfinite(theta)) {
    std::ostringstream os;
    os << "bayes_parameter: non-finite estimate for n=" << n << ", x_max=" << x_max;
    throw NumericFailure(os.str());
  }
  // Posterior support is [X, ∞); clamp the last-ulp rounding.
  return std::max(theta, std::nextafter(x_max, std::numeric_limits<double>::infinity()));
}

UniformDensity bayes_uniform_restricted(const Sample& s, Metric metric) {
  return bayes_uniform_restricted(s.n(), s.x_max(), metric);
}

UniformDensity bayes_uniform_restricted(int n, double x_max, Metric metric) {
  require_valid(n, x_max);
  const double exponent = metric == Metric::Fisher ? 1.0 / n : 1.0 / (n + 0.5);
  return UniformDensity{std::exp2(exponent) * x_max};
}

double restricted_objective(double b, const Sample& s, Metric metric) {
  return restricted_objective(b, s.n(), s.x_max(), metric);
}

double restricted_objective(double b, int n, double x_max, Metric metric) {
  if (!(b > 0.0)) throw InvalidArgument("restricted_objective needs b > 0");
  require_valid(n, x_max);
  if (metric == Metric::Fisher) return restricted_objective_quadrature(b, n, x_max, metric);
  const double power = metric_power(n, metric);
  return std::exp(log_scale_factor(x_max, power)) * lebesgue_normalized(b / x_max, n);
}

double restricted_objective_quadrature(double b, int n, double x_max, Metric metric) {
  if (!(b > 0.0)) throw InvalidArgument("restricted_objective needs b > 0");
  require_valid(n, x_max);
  const double power = metric_power(n, metric);
  return std::exp(log_scale_factor(x_max, power)) * normalized_restricted_quadrature(b / x_max, power);
}

double minimize_restricted_objective(int n, double x_max, Metric metric) {
  require_valid(n, x_max);
  // The X^{-power} factor does not move the minimizer; search on β = b/X.
  const double power = metric_power(n, metric);
  auto objective = [&](double beta) {
    return metric == Metric::Lebesgue ? lebesgue_normalized(beta, n) : normalized_restricted_quadrature(beta, power);
  };
  return x_max * golden_section_minimize(objective, 1.0, 10.0, 1e-10 / x_max).x;
}

double fisher_information(double a) {
  if (!(a > 0.0)) throw InvalidArgument("fisher_information needs a > 0");
  return 1.0 / (a * a);
}

UnrestrictedDensity bayes_unrestricted(const Sample& s) { return UnrestrictedDensity{s.n(), s.x_max()}; }

UniformDensity project_to_uniform(const UnrestrictedDensity& d) {
  require_valid(d.n, d.x_max);
  return UniformDensity{std::exp2(1.0 / d.n) * d.x_max};
}

UniformDensity project_to_uniform_numeric(const UnrestrictedDensity& d) {
  require_valid(d.n, d.x_max);
  auto objective = [&](double beta) { return unrestricted_sq_error(d, beta * d.x_max); };
  return UniformDensity{d.x_max * golden_section_minimize(objective, 1.0, 10.0, 1e-10 / d.x_max).x};
}

double uniform_sq_error(double b, double theta) {
  require_positive(b, "uniform scale");
  require_positive(theta, "reference scale");
  return std::abs(b - theta) / (b * theta);
}

double unrestricted_sq_error(const UnrestrictedDensity& d, double theta) {
  require_valid(d.n, d.x_max);
  require_positive(theta, "reference scale");
  const double n = d.n;
  const double x = d.x_max;
  const double plateau = n / ((n + 1.0) * x);
  // ∫ g*² = c²X + c²X/(2n+1); mass of g* on [0, θ] in closed form per side of X.
  const double energy = plateau * plateau * x * (2.0 * n + 2.0) / (2.0 * n + 1.0);
  const double mass_below = theta <= x ? plateau * theta : 1.0 - std::pow(x / theta, n) / (n + 1.0);
  return std::max(energy + (1.0 - 2.0 * mass_below) / theta, 0.0);
}

}  // namespace fbd
