#pragma once

#include <functional>

namespace betaens {

struct QuadratureResult {
  double value;
  double error_estimate;
};

/// Adaptive Gauss–Kronrod (31-point) integral of f over [a, b]. Throws
/// NumericalError when the error estimate exceeds `relative_tolerance`
/// relative to |value| (with a 1e−300 absolute floor).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double relative_tolerance = 1e-12);

}  // namespace betaens
