#include "betaens/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "betaens/error.hpp"

namespace betaens {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double relative_tolerance) {
  constexpr unsigned kMaxDepth = 30;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, relative_tolerance, &error);
  if (!std::isfinite(value) ||
      error > 10.0 * relative_tolerance * std::abs(value) + 1e-300) {
    throw NumericalError("quadrature did not converge: error estimate " +
                         std::to_string(error) + " for value " + std::to_string(value));
  }
  return {value, error};
}

}  // namespace betaens
