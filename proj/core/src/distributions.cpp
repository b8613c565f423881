#include "betaens/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betaens/error.hpp"

namespace betaens {
namespace {

// Largest double below one; keeps rounded draws inside the open disk.
constexpr double kBelowOne = 1.0 - 0x1.0p-53;

}  // namespace

ThetaParam::ThetaParam(double nu) : nu_(nu) {
  if (!(std::isfinite(nu) && nu > 1.0)) {
    throw ParameterError("Theta parameter nu must be > 1, got " + std::to_string(nu));
  }
}

SymBetaParam::SymBetaParam(double s, double t) : s_(s), t_(t) {
  if (!(std::isfinite(s) && s > 0.0 && std::isfinite(t) && t > 0.0)) {
    throw ParameterError("Beta parameters must be > 0, got s=" + std::to_string(s) +
                         " t=" + std::to_string(t));
  }
}

double SymBetaMoments::central4() const noexcept {
  return m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
}

double sample_standard_normal(RandomStream& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double q = u * u + v * v;
    if (q > 0.0 && q < 1.0) return u * std::sqrt(-2.0 * std::log(q) / q);
  }
}

double sample_log_gamma(double shape, RandomStream& rng) {
  detail::require(shape > 0.0, "gamma shape must be > 0");
  if (shape < 1.0) {
    return sample_log_gamma(shape + 1.0, rng) + std::log(rng.uniform()) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

DiskSample sample_theta(const ThetaParam& p, RandomStream& rng) {
  const double v = rng.uniform();
  // Leave room for rounding in polar() so that |z| < 1 survives.
  constexpr double kRadiusCap = 1.0 - 0x1.0p-50;
  const double r = std::min(std::sqrt(-std::expm1(2.0 * std::log(v) / (p.nu() - 1.0))), kRadiusCap);
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  return {std::polar(r, angle)};
}

double sample_sym_beta(const SymBetaParam& p, RandomStream& rng) {
  // 2·G_t/(G_t+G_s) − 1 = tanh((log G_t − log G_s)/2), stable for tiny shapes.
  const double log_gt = sample_log_gamma(p.t(), rng);
  const double log_gs = sample_log_gamma(p.s(), rng);
  const double x = std::tanh(0.5 * (log_gt - log_gs));
  if (std::abs(x) >= 1.0) return std::copysign(kBelowOne, x);
  return x;
}

ThetaMoments theta_moments(const ThetaParam& p) noexcept {
  const double nu = p.nu();
  return {2.0 / (nu + 1.0), 8.0 / ((nu + 1.0) * (nu + 3.0))};
}

SymBetaMoments sym_beta_moments(const SymBetaParam& p) noexcept {
  const double s = p.s();
  const double t = p.t();
  const double sum = s + t;
  const double diff = t - s;
  const double d2 = diff * diff;
  SymBetaMoments m{};
  m.m1 = diff / sum;
  m.m2 = (d2 + sum) / (sum * (sum + 1.0));
  m.m3 = diff * (d2 + 3.0 * sum + 2.0) / (sum * (1.0 + sum) * (sum + 2.0));
  m.m4 = (d2 * (d2 + 6.0 * sum + 8.0) + 3.0 * sum * sum + 6.0 * sum) /
         (sum * (1.0 + sum) * (sum + 2.0) * (sum + 3.0));
  m.var = 4.0 * s * t / (sum * sum * (sum + 1.0));
  return m;
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParameterError("digamma requires finite x > 0, got " + std::to_string(x));
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Bernoulli tail: sum B_2k / (2k x^2k), k = 1..7.
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

double expected_neg_x2log(const SymBetaParam& p) {
  const double s = p.s();
  const double t = p.t();
  const double sum = s + t;
  const double d2 = (s - t) * (s - t);
  const double bracket =
      2.0 * digamma(sum) - digamma(t) - digamma(s) - 2.0 * std::numbers::ln2;
  return (d2 + sum) / (sum * (1.0 + sum)) * bracket +
         4.0 * (sum * d2 + t * t + s * s) / (sum * sum * (1.0 + sum) * (1.0 + sum));
}

}  // namespace betaens
