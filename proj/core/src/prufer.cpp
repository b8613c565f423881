#include "betaens/prufer.hpp"

#include <numbers>
#include <string>

#include "betaens/error.hpp"

namespace betaens {

bool VerblunskyPath::is_real() const noexcept {
  for (const auto& a : alphas) {
    if (a.imag() != 0.0) return false;
  }
  return true;
}

void VerblunskyPath::validate() const {
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(std::norm(alphas[k]) < 1.0)) {
      throw ParameterError("Verblunsky coefficient " + std::to_string(k) +
                           " is not inside the unit disk");
    }
  }
  if (eta && !(*eta >= 0.0 && *eta < 2.0 * std::numbers::pi)) {
    throw ParameterError("boundary phase eta must lie in [0, 2pi)");
  }
}

double upsilon(double psi, std::complex<double> alpha) {
  if (!(std::norm(alpha) < 1.0)) {
    throw ParameterError("upsilon requires |alpha| < 1");
  }
  return detail::upsilon_unchecked(psi, alpha);
}

double upsilon_tilde_c(double psi, std::complex<double> alpha) noexcept {
  return 2.0 * (std::complex<double>(std::cos(psi), std::sin(psi)) * alpha).imag();
}

double upsilon_tilde_j(double psi, double alpha, double mean_alpha) noexcept {
  return 2.0 * (alpha - mean_alpha) * std::sin(psi);
}

PhaseTrajectory evolve_phase(double theta, const VerblunskyPath& path, bool keep_history) {
  path.validate();
  PhaseTrajectory traj;
  traj.theta = theta;
  traj.full_history = keep_history;
  double psi = theta;
  if (keep_history) {
    traj.psi.reserve(path.size() + 1);
    traj.psi.push_back(psi);
  }
  for (const auto& alpha : path.alphas) {
    psi += theta + detail::upsilon_unchecked(psi, alpha);
    if (keep_history) traj.psi.push_back(psi);
  }
  if (!keep_history) traj.psi.push_back(psi);
  return traj;
}

std::vector<double> evolve_terminal_phases(std::span<const double> thetas,
                                           const VerblunskyPath& path) {
  path.validate();
  std::vector<double> psi(thetas.begin(), thetas.end());
  const bool real = path.is_real();
  for (const auto& alpha : path.alphas) {
    for (std::size_t j = 0; j < psi.size(); ++j) {
      psi[j] += thetas[j] + (real ? detail::upsilon_unchecked(psi[j], alpha.real())
                                  : detail::upsilon_unchecked(psi[j], alpha));
    }
  }
  return psi;
}

}  // namespace betaens
