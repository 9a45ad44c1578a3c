#include "fbd/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "fbd/errors.hpp"

namespace fbd {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                                      int max_iters) {
  if (!(lo < hi)) throw InvalidDomain("golden-section search needs lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int iter = 0;
  for (; iter < max_iters && (b - a) > abs_tol; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), iter};
}

Quadrature integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol,
                              double abs_floor) {
  if (a == b) return {};
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  double value = gauss_kronrod<double, 31>::integrate(f, a, b, 0, rel_tol, &error, &l1);
  if (std::isfinite(value) && error <= rel_tol * l1 + abs_floor) return {value, error};

  // Recursing below the absolute floor only chases evaluation noise.
  const double tol = l1 > 0.0 ? std::max(rel_tol, std::min(abs_floor / l1, 1e-6)) : rel_tol;
  value = gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &error, &l1);
  if (!std::isfinite(value) || error > 100.0 * tol * l1 + abs_floor) {
    std::ostringstream os;
    os.precision(17);
    os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: value " << value
       << ", error estimate " << error << ", L1 " << l1;
    throw NumericFailure(os.str());
  }
  return {value, error};
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw InvalidArgument("find_root: endpoints do not bracket a sign change");
  std::uintmax_t iters = 200;
  auto tol = [rel_tol](double x, double y) { return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y)); };
  const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace fbd
