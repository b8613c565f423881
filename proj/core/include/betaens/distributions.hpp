#pragma once

#include <complex>

#include "betaens/random.hpp"

namespace betaens {

/// Parameter of the rotation-invariant disk law Θ_ν with density
/// (ν−1)/(2π)·(1−|z|²)^{(ν−3)/2}. Requires ν > 1.
class ThetaParam {
 public:
  explicit ThetaParam(double nu);
  double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

/// Shape parameters of the symmetric Beta law B(s,t) on (−1,1), density
/// proportional to (1−x)^{s−1}(1+x)^{t−1}. Requires s, t > 0.
class SymBetaParam {
 public:
  SymBetaParam(double s, double t);
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }

 private:
  double s_;
  double t_;
};

/// A point of the open unit disk.
struct DiskSample {
  std::complex<double> value;
};

struct ThetaMoments {
  double m2;  ///< E|z|²
  double m4;  ///< E|z|⁴
};

struct SymBetaMoments {
  double m1;
  double m2;
  double m3;
  double m4;
  double var;

  /// E{(X − E X)⁴}, assembled from the raw moments.
  double central4() const noexcept;
};

/// Standard normal variate (Marsaglia polar method, spare discarded).
double sample_standard_normal(RandomStream& rng);

/// log of a Gamma(shape, 1) variate. Marsaglia–Tsang for shape ≥ 1, and
/// G(shape+1)·U^{1/shape} in log space below that so tiny shapes cannot
/// underflow.
double sample_log_gamma(double shape, RandomStream& rng);

/// Θ_ν draw: uniform argument, radius from 1−|z|² = V^{2/(ν−1)}.
DiskSample sample_theta(const ThetaParam& p, RandomStream& rng);

/// B(s,t) draw on (−1,1), computed as 2g−1 with g = G_t/(G_t+G_s).
double sample_sym_beta(const SymBetaParam& p, RandomStream& rng);

ThetaMoments theta_moments(const ThetaParam& p) noexcept;

/// Closed-form raw moments 1..4 and variance of B(s,t).
SymBetaMoments sym_beta_moments(const SymBetaParam& p) noexcept;

/// Digamma Ψ(x) for x > 0, absolute accuracy better than 1e−10.
double digamma(double x);

/// E{−X² log(1−X²)} for X ∼ B(s,t), closed form in digamma and rationals.
double expected_neg_x2log(const SymBetaParam& p);

}  // namespace betaens
