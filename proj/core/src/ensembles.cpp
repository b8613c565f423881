#include "betaens/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betaens/error.hpp"
#include "betaens/szego.hpp"

namespace betaens {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double draw_eta(RandomStream& rng) {
  // uniform() is open at 1, so η stays in [0, 2π).
  return kTwoPi * rng.uniform();
}

void check_path_length(const VerblunskyPath& path, std::size_t expected) {
  if (path.size() != expected) {
    throw ParameterError("path has " + std::to_string(path.size()) +
                         " coefficients, expected " + std::to_string(expected));
  }
}

}  // namespace

void EnsembleSpec::validate() const {
  detail::require(n >= 1, "ensemble size n must be >= 1");
  detail::require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  if (kind == EnsembleKind::jacobi) {
    detail::require(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0,
                    "Jacobi parameters a and b must be > 0");
  }
}

std::size_t EnsembleSpec::path_length() const noexcept {
  return kind == EnsembleKind::circular ? n - 1 : 2 * n - 1;
}

ThetaParam circular_coefficient_law(double beta, std::size_t k) {
  return ThetaParam(beta * static_cast<double>(k + 1) + 1.0);
}

SymBetaParam jacobi_coefficient_law(double beta, double a, double b, std::size_t k) {
  const auto kd = static_cast<double>(k);
  if (k % 2 == 0) return SymBetaParam(kd * beta / 4.0 + a, kd * beta / 4.0 + b);
  return SymBetaParam((kd - 1.0) * beta / 4.0 + a + b, (kd + 1.0) * beta / 4.0);
}

VerblunskyPath draw_circular_path(std::size_t n, double beta, RandomStream& rng) {
  EnsembleSpec{EnsembleKind::circular, n, beta}.validate();
  VerblunskyPath path;
  path.eta = draw_eta(rng);
  path.alphas.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    path.alphas.push_back(sample_theta(circular_coefficient_law(beta, k), rng).value);
  }
  return path;
}

VerblunskyPath draw_jacobi_path(std::size_t n, double beta, double a, double b,
                                RandomStream& rng) {
  EnsembleSpec{EnsembleKind::jacobi, n, beta, a, b}.validate();
  VerblunskyPath path;
  path.alphas.reserve(2 * n - 1);
  for (std::size_t k = 0; k < 2 * n - 1; ++k) {
    path.alphas.emplace_back(sample_sym_beta(jacobi_coefficient_law(beta, a, b, k), rng), 0.0);
  }
  return path;
}

VerblunskyPath draw_path(const EnsembleSpec& spec, RandomStream& rng) {
  if (spec.kind == EnsembleKind::circular) return draw_circular_path(spec.n, spec.beta, rng);
  return draw_jacobi_path(spec.n, spec.beta, spec.a, spec.b, rng);
}

PointSample points_from_path(const EnsembleSpec& spec, const VerblunskyPath& path) {
  spec.validate();
  check_path_length(path, spec.path_length());
  PointSample sample{{}, spec};
  if (spec.kind == EnsembleKind::circular) {
    detail::require(path.eta.has_value(), "circular path needs a boundary phase eta");
    sample.points = find_points(path, *path.eta, spec.n - 1);
    return sample;
  }
  const auto angles = find_points_in(path, kPi, 2 * spec.n - 1, 0.0, kPi);
  if (angles.size() != spec.n) {
    throw NumericalError("bracket failure: found " + std::to_string(angles.size()) +
                         " Jacobi points, expected " + std::to_string(spec.n));
  }
  sample.points.reserve(spec.n);
  for (double theta : angles) sample.points.push_back(2.0 * std::cos(theta));
  std::sort(sample.points.begin(), sample.points.end());
  return sample;
}

PointSample sample_points(const EnsembleSpec& spec, RandomStream& rng) {
  spec.validate();
  return points_from_path(spec, draw_path(spec, rng));
}

std::size_t arc_count_from_phases(double psi_lo, double psi_hi, double eta) noexcept {
  const double upper = std::floor((psi_hi + eta) / kTwoPi);
  const double lower = std::floor((psi_lo + eta) / kTwoPi);
  return static_cast<std::size_t>(upper - lower);
}

CountStatistic count_in_arc(const VerblunskyPath& path, std::size_t n, double theta_lo,
                            double theta_hi) {
  detail::require(-kPi < theta_lo && theta_lo < theta_hi && theta_hi < kPi,
                  "arc endpoints must satisfy -pi < lo < hi < pi");
  detail::require(n >= 1, "n must be >= 1");
  detail::require(path.eta.has_value(), "circular path needs a boundary phase eta");
  check_path_length(path, n - 1);
  const double thetas[] = {theta_lo, theta_hi};
  const auto psi = evolve_terminal_phases(thetas, path);
  return {arc_count_from_phases(psi[0], psi[1], *path.eta), theta_lo, theta_hi};
}

std::size_t jacobi_count_from_phase(double psi) noexcept {
  const double count = std::floor((psi + kPi) / kTwoPi);
  return count > 0.0 ? static_cast<std::size_t>(count) : 0;
}

CountStatistic count_jacobi(const VerblunskyPath& path, std::size_t n, double theta) {
  detail::require(0.0 < theta && theta < kPi, "Jacobi angle must lie in (0, pi)");
  detail::require(n >= 1, "n must be >= 1");
  check_path_length(path, 2 * n - 1);
  const double thetas[] = {theta};
  const auto psi = evolve_terminal_phases(thetas, path);
  return {jacobi_count_from_phase(psi[0]), 2.0 * std::cos(theta), 2.0};
}

TerminalPhases sample_terminal_phases(const EnsembleSpec& spec, std::span<const double> thetas,
                                      RandomStream& rng) {
  spec.validate();
  TerminalPhases out;
  out.psi.assign(thetas.begin(), thetas.end());
  auto& psi = out.psi;
  if (spec.kind == EnsembleKind::circular) {
    out.eta = draw_eta(rng);
    for (std::size_t k = 0; k + 1 < spec.n; ++k) {
      const auto alpha = sample_theta(circular_coefficient_law(spec.beta, k), rng).value;
      for (std::size_t j = 0; j < psi.size(); ++j) {
        psi[j] += thetas[j] + detail::upsilon_unchecked(psi[j], alpha);
      }
    }
    return out;
  }
  for (std::size_t k = 0; k < 2 * spec.n - 1; ++k) {
    const double alpha = sample_sym_beta(jacobi_coefficient_law(spec.beta, spec.a, spec.b, k), rng);
    for (std::size_t j = 0; j < psi.size(); ++j) {
      psi[j] += thetas[j] + detail::upsilon_unchecked(psi[j], alpha);
    }
  }
  return out;
}

}  // namespace betaens
