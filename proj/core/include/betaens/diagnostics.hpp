#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betaens/ensembles.hpp"

namespace betaens {

// Finite-n versions of the martingale CLT hypotheses for the phase sums.
// All sums run over the coefficients actually present in the path
// (k = 0..n−2 circular, k = 0..2n−2 Jacobi) and normalize by log n with n
// the number of points.

/// Running martingale S(m, θ) = Σ_{k<m} Υ̃(ψ_k(θ), α_k) for m = 1..path size.
/// Needs a trajectory with full history over the same path.
std::vector<double> martingale_sum(const PhaseTrajectory& traj, const VerblunskyPath& path,
                                   const EnsembleSpec& spec);

/// Linearized increment Υ̃ for coefficient k under the ensemble's law.
double upsilon_tilde(const EnsembleSpec& spec, std::size_t k, double psi,
                     std::complex<double> alpha);

/// Conditional covariance weight 4/(β(k+1)+2) of the circular increments.
double circular_stability_weight(double beta, std::size_t k);

/// Jacobi weight ε_k: 4(kβ+4a)(kβ+4b)/[(kβ+2a+2b)²(kβ+2a+2b+2)] for even k,
/// 4[(k−1)β+4a+4b](k+1)β/[(kβ+2a+2b)²(kβ+2a+2b+2)] for odd k.
double jacobi_stability_weight(double beta, double a, double b, std::size_t k);

/// (1/log n) Σ_k E{Υ̃(ψ_k(θ1),α_k) Υ̃(ψ_k(θ2),α_k) | past} along a realized path.
double stability_statistic(const VerblunskyPath& path, double theta1, double theta2,
                           const EnsembleSpec& spec);

enum class FourthMomentMethod { closed_form, monte_carlo };

struct MomentOptions {
  FourthMomentMethod method = FourthMomentMethod::closed_form;
  std::size_t inner_draws = 1000;  ///< per coefficient, Monte Carlo method only
  std::uint64_t seed = 0;
};

/// (1/log² n) Σ_k E{Υ̃(ψ_k(θ),α_k)⁴ | past}. Circular: 48/((ν+1)(ν+3)),
/// independent of the path. Jacobi: 16 sin⁴ψ_k · E(α_k − Eα_k)⁴, either from
/// the raw Beta moments or by inner Monte Carlo.
double moment_statistic(const VerblunskyPath& path, double theta, const EnsembleSpec& spec,
                        const MomentOptions& options = {});

/// |Σ_k (Υ − Υ̃)(ψ_k(θ), α_k)| reported in both normalizations.
struct ApproxStatistic {
  double abs_over_sqrt_log;  ///< |Σ| / √(log n)
  double square_over_log;    ///< |Σ|² / log n
};

ApproxStatistic approx_statistic(const VerblunskyPath& path, double theta,
                                 const EnsembleSpec& spec);

struct SumBound {
  double lhs;
  double rhs;
  bool ok;
};

/// Evaluates both sides of the summation-by-parts bound
///   |Σ ε_k e^{iX_k}| ≤ (2‖ε‖∞ + ‖ε_k − ε_{k−1}‖₁ + ‖ε_k Y_k‖₁) / |1 − e^{iδ}|
/// with X_{k+1} = X_k + δ + Y_k. δ must lie in (0, 2π).
SumBound sum_bound_check(std::span<const double> epsilons, double x0, double delta,
                         std::span<const double> ys);

struct PartitionCheck {
  double quadrature;
  double closed_form;
};

/// Two-point circular partition function: ∫∫|e^{iφ1} − e^{iφ2}|^β dφ/(2π)²
/// by adaptive quadrature, against Γ(β+1)/Γ(β/2+1)².
PartitionCheck partition_check(double beta);

/// One hypothesis statistic tracked across an n-grid (trial means).
struct HypothesisTrace {
  std::string label;
  std::vector<std::size_t> n_values;
  std::vector<double> statistic_values;
  double target = 0.0;
};

struct TraceOptions {
  double theta1 = 0.5;
  double theta2 = 1.5;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

/// Stability (diagonal and cross), moment and both approximation statistics
/// for each n in `n_values`, averaged over independent trials.
std::vector<HypothesisTrace> trace_hypotheses(const EnsembleSpec& base,
                                              std::span<const std::size_t> n_values,
                                              const TraceOptions& options);

}  // namespace betaens
