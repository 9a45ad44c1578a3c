#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace fbd {

enum class MeasureKind { IntervalQuadrature, DiracSum };

/// A discrete carrier for a Borel measure on the real line.
///
/// Interval spaces hold midpoint-rule nodes with cell widths as weights;
/// Dirac spaces hold point locations with their masses. Instances are
/// immutable and shared between grid functions through `SpacePtr`.
class MeasureSpace {
 public:
  MeasureSpace(MeasureKind kind, std::vector<double> nodes, std::vector<double> weights);

  MeasureKind kind() const noexcept { return kind_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double total_mass() const noexcept;

  bool operator==(const MeasureSpace& other) const = default;

 private:
  MeasureKind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

/// Midpoint rule on [a, b] with `cells` equal cells.
SpacePtr make_interval_grid(double a, double b, std::size_t cells);

/// Sum of point masses at distinct `points`. Empty `masses` means unit masses.
SpacePtr make_dirac(std::vector<double> points, std::vector<double> masses = {});

/// Real values sampled at the nodes of a measure space.
///
/// Values may be signed; perturbation directions need that. Use
/// `is_nonnegative` / `require_nonnegative` where membership in the
/// nonnegative cone matters.
class GridFunction {
 public:
  GridFunction(SpacePtr space, std::vector<double> values);

  static GridFunction constant(SpacePtr space, double value);
  static GridFunction sample(SpacePtr space, const std::function<double(double)>& fn);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  bool same_space(const GridFunction& other) const noexcept;
  bool is_nonnegative() const noexcept;
  bool is_strictly_positive() const noexcept;
  double sup_norm() const noexcept;

  GridFunction map(const std::function<double(double)>& fn) const;

  GridFunction& operator+=(const GridFunction& rhs);
  GridFunction& operator-=(const GridFunction& rhs);
  GridFunction& operator*=(double s);

  friend GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
  friend GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
  friend GridFunction operator*(GridFunction f, double s) { return f *= s; }
  friend GridFunction operator*(double s, GridFunction f) { return f *= s; }

  /// Pointwise product.
  GridFunction hadamard(const GridFunction& rhs) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

bool same_space(const MeasureSpace& a, const MeasureSpace& b) noexcept;

/// Throws IncompatibleSpace unless `f` and `g` live on the same space.
void require_same_space(const GridFunction& f, const GridFunction& g);

/// Throws DomainViolation if any value is negative.
void require_nonnegative(const GridFunction& f, const char* what);

double integrate(const GridFunction& f);
double integrate(const MeasureSpace& space, const GridFunction& f);

/// ∫ f·g dν without materializing the product.
double inner(const GridFunction& f, const GridFunction& g);

/// L^p norm for p >= 1; pass `lp_infinity` for the sup norm.
double lp_norm(const GridFunction& f, double p);
double lp_norm(const MeasureSpace& space, const GridFunction& f, double p);

inline constexpr double lp_infinity = std::numeric_limits<double>::infinity();

}  // namespace fbd
