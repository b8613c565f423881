#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "betaens/prufer.hpp"

namespace betaens {

/// Values of the monic orthogonal polynomial Φ_k and its reversal Φ*_k at z.
struct PolyPair {
  std::complex<double> phi;
  std::complex<double> phi_star;
  std::size_t degree = 0;
};

/// k steps of the Szegő recurrence from Φ_0 = Φ*_0 = 1. Requires k ≤ path size.
PolyPair eval_polys(const VerblunskyPath& path, std::complex<double> z, std::size_t k);

/// Blaschke product B_k(z) = z Φ_k(z) / Φ*_k(z) for |z| = 1.
std::complex<double> blaschke(const VerblunskyPath& path, std::complex<double> z,
                              std::size_t k);

/// B_0(z), ..., B_k(z) in one pass of the recurrence.
std::vector<std::complex<double>> blaschke_sequence(const VerblunskyPath& path,
                                                    std::complex<double> z, std::size_t k);

/// Continuous argument of B_k(e^{iθ}) computed from the polynomials:
/// (k+1)θ − 2 arg Φ*_k(e^{iθ}), with arg Φ*_k accumulated from the
/// step ratios Φ*_{j+1}/Φ*_j (which have positive real part).
double polynomial_phase(const VerblunskyPath& path, double theta, std::size_t k);

/// All θ ∈ (−π, π) with B_d(e^{iθ}) = e^{−i·target_phase}, d = degree_index.
/// Returns exactly d+1 sorted angles or throws NumericalError.
std::vector<double> find_points(const VerblunskyPath& path, double target_phase,
                                std::size_t degree_index);

/// Same root search restricted to the open window (lo, hi). The number of
/// roots is whatever the phase winding over the window dictates.
std::vector<double> find_points_in(const VerblunskyPath& path, double target_phase,
                                   std::size_t degree_index, double lo, double hi);

}  // namespace betaens
