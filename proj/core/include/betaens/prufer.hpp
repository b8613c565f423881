#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace betaens {

/// One realization of Verblunsky coefficients α_0..α_{m−1} in the open disk.
/// Circular paths carry the boundary phase η; Jacobi paths leave it empty
/// (their target phase is fixed to π) and have exactly real coefficients.
struct VerblunskyPath {
  std::vector<std::complex<double>> alphas;
  std::optional<double> eta;

  std::size_t size() const noexcept { return alphas.size(); }
  bool is_real() const noexcept;
  /// Throws ParameterError unless every |α_k| < 1 and η ∈ [0, 2π).
  void validate() const;
};

/// ψ_0(θ), ..., ψ_m(θ) at a fixed θ, or only ψ_m when history is not kept.
struct PhaseTrajectory {
  double theta = 0.0;
  std::vector<double> psi;
  bool full_history = false;

  double terminal() const { return psi.back(); }
};

namespace detail {

// Υ without the domain check; callers validate the path once.
inline double upsilon_unchecked(double psi, std::complex<double> alpha) noexcept {
  const std::complex<double> w = alpha * std::complex<double>(std::cos(psi), std::sin(psi));
  return 2.0 * std::atan2(w.imag(), 1.0 - w.real());
}

inline double upsilon_unchecked(double psi, double alpha) noexcept {
  const double w_re = alpha * std::cos(psi);
  const double w_im = alpha * std::sin(psi);
  return 2.0 * std::atan2(w_im, 1.0 - w_re);
}

}  // namespace detail

/// Υ(ψ,α) = −2 Im log(1 − α e^{iψ}) on the principal branch; lies in (−π, π).
/// Throws ParameterError if |α| ≥ 1.
double upsilon(double psi, std::complex<double> alpha);

/// Circular linearization 2 Im(e^{iψ} α).
double upsilon_tilde_c(double psi, std::complex<double> alpha) noexcept;

/// Jacobi linearization 2(α − E α) sin ψ.
double upsilon_tilde_j(double psi, double alpha, double mean_alpha) noexcept;

/// Runs ψ_{k+1} = ψ_k + θ + Υ(ψ_k, α_k) from ψ_0 = θ over the whole path.
PhaseTrajectory evolve_phase(double theta, const VerblunskyPath& path, bool keep_history);

/// Terminal phases for several θ in one sweep over the path.
std::vector<double> evolve_terminal_phases(std::span<const double> thetas,
                                           const VerblunskyPath& path);

}  // namespace betaens
