#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "betaens/distributions.hpp"
#include "betaens/prufer.hpp"
#include "betaens/random.hpp"

namespace betaens {

enum class EnsembleKind { circular, jacobi };

/// Which ensemble to sample: n points, inverse temperature β, and the Jacobi
/// edge exponents a, b (ignored for the circular ensemble).
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::circular;
  std::size_t n = 1;
  double beta = 2.0;
  double a = 1.0;
  double b = 1.0;

  /// Throws ParameterError on n = 0, β ≤ 0, or (Jacobi) a, b ≤ 0.
  void validate() const;
  /// Coefficients in a path: n−1 (circular) or 2n−1 (Jacobi).
  std::size_t path_length() const noexcept;
};

/// Law of the k-th circular coefficient, Θ_{β(k+1)+1}.
ThetaParam circular_coefficient_law(double beta, std::size_t k);

/// Law of the k-th Jacobi coefficient: B(kβ/4+a, kβ/4+b) for even k and
/// B((k−1)β/4+a+b, (k+1)β/4) for odd k.
SymBetaParam jacobi_coefficient_law(double beta, double a, double b, std::size_t k);

/// A sorted point configuration: angles in (−π, π) for the circular
/// ensemble, values in (−2, 2) for the Jacobi ensemble.
struct PointSample {
  std::vector<double> points;
  EnsembleSpec spec;
};

/// Number of points in an interval, in the ensemble's own coordinate.
struct CountStatistic {
  std::size_t count = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// η first, then α_0..α_{n−2}.
VerblunskyPath draw_circular_path(std::size_t n, double beta, RandomStream& rng);

/// Real α_0..α_{2n−2}; no η (target phase is π).
VerblunskyPath draw_jacobi_path(std::size_t n, double beta, double a, double b,
                                RandomStream& rng);

VerblunskyPath draw_path(const EnsembleSpec& spec, RandomStream& rng);

/// Points from an already drawn path (circular paths must carry η).
PointSample points_from_path(const EnsembleSpec& spec, const VerblunskyPath& path);

/// Full sample via root finding; O(n²) per configuration.
PointSample sample_points(const EnsembleSpec& spec, RandomStream& rng);

/// Points in the arc (theta_lo, theta_hi] from the terminal phases at the two
/// endpoints; requires −π < lo < hi < π.
CountStatistic count_in_arc(const VerblunskyPath& path, std::size_t n, double theta_lo,
                            double theta_hi);

/// Arc count from precomputed terminal phases ψ_{n−1}(lo), ψ_{n−1}(hi).
std::size_t arc_count_from_phases(double psi_lo, double psi_hi, double eta) noexcept;

/// N_n(θ): Jacobi points in [2cos θ, 2], θ ∈ (0, π).
CountStatistic count_jacobi(const VerblunskyPath& path, std::size_t n, double theta);

/// N_n(θ) from the terminal phase ψ_{2n−1}(θ).
std::size_t jacobi_count_from_phase(double psi) noexcept;

/// Result of the counting-only fast path.
struct TerminalPhases {
  std::vector<double> psi;  ///< one per requested θ
  double eta = 0.0;         ///< circular boundary phase (0 for Jacobi)
};

/// Draws coefficients on the fly and advances all requested phases without
/// storing the path: O(n·J) time, O(J) memory. Consumes the stream exactly as
/// draw_path does, so results match draw_path + evolve_terminal_phases.
TerminalPhases sample_terminal_phases(const EnsembleSpec& spec, std::span<const double> thetas,
                                      RandomStream& rng);

}  // namespace betaens
