#pragma once

// Independent reference computations for the test and acceptance suites. Nothing here calls
// into the library's numerical routines.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

// −2 Im log(1 − w) = 2 Σ Im(w^l)/l, truncated.
inline double upsilon_series(double psi, std::complex<double> alpha, int terms = 50) {
  const std::complex<double> w = alpha * std::polar(1.0, psi);
  std::complex<double> power = 1.0;
  double sum = 0.0;
  for (int l = 1; l <= terms; ++l) {
    power *= w;
    sum += power.imag() / l;
  }
  return 2.0 * sum;
}

// Euler–Mascheroni constant from H_N − log N with Euler–Maclaurin tail.
inline double euler_gamma() {
  constexpr int n = 1000;
  long double h = 0.0L;
  for (int k = n; k >= 1; --k) h += 1.0L / k;
  const long double nn = n;
  const long double corr = -1.0L / (2 * nn) + 1.0L / (12 * nn * nn) -
                           1.0L / (120 * nn * nn * nn * nn) +
                           1.0L / (252 * nn * nn * nn * nn * nn * nn);
  return static_cast<double>(h - std::log(nn) + corr);
}

// Ψ(m) = H_{m−1} − γ.
inline double digamma_integer(int m) {
  long double h = 0.0L;
  for (int k = m - 1; k >= 1; --k) h += 1.0L / k;
  return static_cast<double>(h) - euler_gamma();
}

// Ψ(m + 1/2) = −γ − 2 log 2 + Σ_{k=1}^m 2/(2k−1).
inline double digamma_half_integer(int m) {
  long double h = 0.0L;
  for (int k = m; k >= 1; --k) h += 2.0L / (2 * k - 1);
  return static_cast<double>(h) - euler_gamma() - 2.0 * std::numbers::ln2;
}

inline double log_beta_normalizer(double s, double t) {
  return std::lgamma(s + t) - std::lgamma(s) - std::lgamma(t) - (s + t - 1.0) * std::numbers::ln2;
}

// E g(X) for X with density ∝ (1−x)^{s−1}(1+x)^{t−1} on (−1,1).
// g receives x together with the distances 1−x and 1+x, computed without
// cancellation near the endpoints.
template <class G>
double sym_beta_expectation(double s, double t, G g) {
  const double log_c = log_beta_normalizer(s, t);
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x, double xc) {
    // xc is the signed distance to the nearer endpoint.
    const double one_minus = x >= 0 ? std::abs(xc) : 1.0 - x;
    const double one_plus = x >= 0 ? 1.0 + x : std::abs(xc);
    if (one_minus <= 0.0 || one_plus <= 0.0) return 0.0;
    const double log_w = log_c + (s - 1.0) * std::log(one_minus) + (t - 1.0) * std::log(one_plus);
    return g(x, one_minus, one_plus) * std::exp(log_w);
  };
  return integrator.integrate(f, -1.0, 1.0, 1e-14);
}

inline double sym_beta_raw_moment(double s, double t, int order) {
  return sym_beta_expectation(s, t, [order](double x, double, double) { return std::pow(x, order); });
}

inline double neg_x2log(double s, double t) {
  return sym_beta_expectation(s, t, [](double x, double om, double op) {
    return -x * x * (std::log(om) + std::log(op));
  });
}

struct MeanAndError {
  double mean;
  double standard_error;
};

inline MeanAndError mean_and_error(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace oracle
