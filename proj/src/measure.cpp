#include "fbd/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "fbd/errors.hpp"

namespace fbd {

MeasureSpace::MeasureSpace(MeasureKind kind, std::vector<double> nodes, std::vector<double> weights)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty()) throw InvalidArgument("measure space needs at least one node");
  if (nodes_.size() != weights_.size()) {
    throw InvalidArgument("measure space: " + std::to_string(nodes_.size()) + " nodes but " +
                          std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw InvalidArgument("measure space: non-finite node");
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("measure space: weights must be finite and nonnegative");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw InvalidArgument("measure space: nodes must be strictly increasing");
    }
  }
}

double MeasureSpace::total_mass() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

SpacePtr make_interval_grid(double a, double b, std::size_t cells) {
  if (!(a < b)) {
    std::ostringstream os;
    os << "interval grid needs a < b, got [" << a << ", " << b << "]";
    throw InvalidDomain(os.str());
  }
  if (cells == 0) throw InvalidArgument("interval grid needs at least one cell");
  const double h = (b - a) / static_cast<double>(cells);
  std::vector<double> nodes(cells);
  for (std::size_t i = 0; i < cells; ++i) nodes[i] = a + (static_cast<double>(i) + 0.5) * h;
  return std::make_shared<const MeasureSpace>(MeasureKind::IntervalQuadrature, std::move(nodes),
                                              std::vector<double>(cells, h));
}

SpacePtr make_dirac(std::vector<double> points, std::vector<double> masses) {
  if (points.empty()) throw InvalidArgument("dirac measure needs at least one point");
  if (masses.empty()) masses.assign(points.size(), 1.0);
  if (masses.size() != points.size()) throw InvalidArgument("dirac measure: points/masses length mismatch");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
  std::vector<double> nodes, weights;
  nodes.reserve(points.size());
  weights.reserve(points.size());
  for (std::size_t k : order) {
    if (!nodes.empty() && nodes.back() == points[k]) throw InvalidArgument("dirac measure: duplicate point");
    nodes.push_back(points[k]);
    weights.push_back(masses[k]);
  }
  return std::make_shared<const MeasureSpace>(MeasureKind::DiracSum, std::move(nodes), std::move(weights));
}

bool same_space(const MeasureSpace& a, const MeasureSpace& b) noexcept { return &a == &b || a == b; }

GridFunction::GridFunction(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw InvalidArgument("grid function needs a measure space");
  if (values_.size() != space_->size()) {
    throw InvalidArgument("grid function: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(space_->size()) + " nodes");
  }
}

GridFunction GridFunction::constant(SpacePtr space, double value) {
  const std::size_t n = space->size();
  return GridFunction(std::move(space), std::vector<double>(n, value));
}

GridFunction GridFunction::sample(SpacePtr space, const std::function<double(double)>& fn) {
  std::vector<double> v;
  v.reserve(space->size());
  for (double x : space->nodes()) v.push_back(fn(x));
  return GridFunction(std::move(space), std::move(v));
}

bool GridFunction::same_space(const GridFunction& other) const noexcept {
  return fbd::same_space(*space_, *other.space_);
}

bool GridFunction::is_nonnegative() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool GridFunction::is_strictly_positive() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

double GridFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), fn);
  return GridFunction(space_, std::move(out));
}

GridFunction& GridFunction::operator+=(const GridFunction& rhs) {
  require_same_space(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& rhs) {
  require_same_space(*this, rhs);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction GridFunction::hadamard(const GridFunction& rhs) const {
  require_same_space(*this, rhs);
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] * rhs.values_[i];
  return GridFunction(space_, std::move(out));
}

void require_same_space(const GridFunction& f, const GridFunction& g) {
  if (!f.same_space(g)) throw IncompatibleSpace("grid functions live on different measure spaces");
}

void require_nonnegative(const GridFunction& f, const char* what) {
  if (!f.is_nonnegative()) throw DomainViolation(std::string(what) + " must be nonnegative at every node");
}

double integrate(const GridFunction& f) {
  const auto w = f.space()->weights();
  const auto v = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += w[i] * v[i];
  return sum;
}

double integrate(const MeasureSpace& space, const GridFunction& f) {
  if (!same_space(space, *f.space())) throw IncompatibleSpace("integrand lives on a different measure space");
  return integrate(f);
}

double inner(const GridFunction& f, const GridFunction& g) {
  require_same_space(f, g);
  const auto w = f.space()->weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i] * g[i];
  return sum;
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("lp_norm needs p >= 1");
  if (std::isinf(p)) return f.sup_norm();
  const auto w = f.space()->weights();
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::abs(f[i]);
    return sum;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i] * f[i];
    return std::sqrt(sum);
  }
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * std::pow(std::abs(f[i]), p);
  return std::pow(sum, 1.0 / p);
}

double lp_norm(const MeasureSpace& space, const GridFunction& f, double p) {
  if (!same_space(space, *f.space())) throw IncompatibleSpace("lp_norm: function lives on a different measure space");
  return lp_norm(f, p);
}

}  // namespace fbd
