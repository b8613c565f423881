#include "betaens/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "betaens/distributions.hpp"
#include "betaens/error.hpp"
#include "betaens/parallel.hpp"
#include "betaens/quadrature.hpp"

namespace betaens {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_points(const EnsembleSpec& spec) {
  detail::require(spec.n >= 2, "diagnostics need n >= 2 (log n > 0)");
  return std::log(static_cast<double>(spec.n));
}

double jacobi_mean(const EnsembleSpec& spec, std::size_t k) {
  return sym_beta_moments(jacobi_coefficient_law(spec.beta, spec.a, spec.b, k)).m1;
}

}  // namespace

double upsilon_tilde(const EnsembleSpec& spec, std::size_t k, double psi,
                     std::complex<double> alpha) {
  if (spec.kind == EnsembleKind::circular) return upsilon_tilde_c(psi, alpha);
  return upsilon_tilde_j(psi, alpha.real(), jacobi_mean(spec, k));
}

std::vector<double> martingale_sum(const PhaseTrajectory& traj, const VerblunskyPath& path,
                                   const EnsembleSpec& spec) {
  if (!traj.full_history || traj.psi.size() < path.size()) {
    throw ParameterError("martingale_sum needs a trajectory with full history over the path");
  }
  std::vector<double> sums;
  sums.reserve(path.size());
  double s = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    s += upsilon_tilde(spec, k, traj.psi[k], path.alphas[k]);
    sums.push_back(s);
  }
  return sums;
}

double circular_stability_weight(double beta, std::size_t k) {
  return 4.0 / (beta * static_cast<double>(k + 1) + 2.0);
}

double jacobi_stability_weight(double beta, double a, double b, std::size_t k) {
  const auto kd = static_cast<double>(k);
  const double base = kd * beta + 2.0 * a + 2.0 * b;
  const double denom = base * base * (base + 2.0);
  if (k % 2 == 0) return 4.0 * (kd * beta + 4.0 * a) * (kd * beta + 4.0 * b) / denom;
  return 4.0 * ((kd - 1.0) * beta + 4.0 * a + 4.0 * b) * (kd + 1.0) * beta / denom;
}

double stability_statistic(const VerblunskyPath& path, double theta1, double theta2,
                           const EnsembleSpec& spec) {
  path.validate();
  const double norm = log_points(spec);
  double psi1 = theta1;
  double psi2 = theta2;
  double sum = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (spec.kind == EnsembleKind::circular) {
      sum += circular_stability_weight(spec.beta, k) * std::cos(psi1 - psi2);
    } else {
      sum += jacobi_stability_weight(spec.beta, spec.a, spec.b, k) *
             (std::cos(psi1 - psi2) - std::cos(psi1 + psi2));
    }
    const auto alpha = path.alphas[k];
    psi1 += theta1 + detail::upsilon_unchecked(psi1, alpha);
    psi2 += theta2 + detail::upsilon_unchecked(psi2, alpha);
  }
  return sum / norm;
}

double moment_statistic(const VerblunskyPath& path, double theta, const EnsembleSpec& spec,
                        const MomentOptions& options) {
  path.validate();
  const double norm = log_points(spec);
  double sum = 0.0;
  if (spec.kind == EnsembleKind::circular) {
    for (std::size_t k = 0; k < path.size(); ++k) {
      const double nu = circular_coefficient_law(spec.beta, k).nu();
      sum += 48.0 / ((nu + 1.0) * (nu + 3.0));
    }
    return sum / (norm * norm);
  }
  RandomStream inner(options.seed);
  double psi = theta;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto law = jacobi_coefficient_law(spec.beta, spec.a, spec.b, k);
    const auto moments = sym_beta_moments(law);
    if (options.method == FourthMomentMethod::closed_form) {
      const double s = std::sin(psi);
      sum += 16.0 * s * s * s * s * moments.central4();
    } else {
      double acc = 0.0;
      for (std::size_t d = 0; d < options.inner_draws; ++d) {
        const double u = upsilon_tilde_j(psi, sample_sym_beta(law, inner), moments.m1);
        acc += u * u * u * u;
      }
      sum += acc / static_cast<double>(options.inner_draws);
    }
    psi += theta + detail::upsilon_unchecked(psi, path.alphas[k].real());
  }
  return sum / (norm * norm);
}

ApproxStatistic approx_statistic(const VerblunskyPath& path, double theta,
                                 const EnsembleSpec& spec) {
  path.validate();
  const double norm = log_points(spec);
  double psi = theta;
  double sum = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto alpha = path.alphas[k];
    const double exact = detail::upsilon_unchecked(psi, alpha);
    sum += exact - upsilon_tilde(spec, k, psi, alpha);
    psi += theta + exact;
  }
  return {std::abs(sum) / std::sqrt(norm), sum * sum / norm};
}

SumBound sum_bound_check(std::span<const double> epsilons, double x0, double delta,
                         std::span<const double> ys) {
  detail::require(delta > 0.0 && delta < kTwoPi, "delta must lie in (0, 2pi)");
  detail::require(epsilons.size() == ys.size(), "epsilons and Ys must have equal length");
  std::complex<double> lhs_sum{0.0, 0.0};
  double sup = 0.0;
  double variation = 0.0;
  double weighted_y = 0.0;
  double x = x0;
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    lhs_sum += epsilons[k] * std::polar(1.0, x);
    sup = std::max(sup, std::abs(epsilons[k]));
    if (k > 0) variation += std::abs(epsilons[k] - epsilons[k - 1]);
    weighted_y += std::abs(epsilons[k] * ys[k]);
    x += delta + ys[k];
  }
  const double lhs = std::abs(lhs_sum);
  const double rhs = (2.0 * sup + variation + weighted_y) / std::abs(1.0 - std::polar(1.0, delta));
  return {lhs, rhs, lhs <= rhs + 1e-12};
}

PartitionCheck partition_check(double beta) {
  detail::require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  // Reduce to the angle difference g = 2u, fold by symmetry onto [0, π/2] and
  // substitute u = v² to tame the u^β endpoint.
  const auto integrand = [beta](double v) {
    const double u = v * v;
    return std::pow(2.0 * std::sin(u), beta) * 2.0 * v;
  };
  const double upper = std::sqrt(std::numbers::pi / 2.0);
  const auto result = integrate_adaptive(integrand, 0.0, upper, 1e-13);
  const double quadrature = 2.0 / std::numbers::pi * result.value;
  const double closed_form = std::exp(std::lgamma(beta + 1.0) - 2.0 * std::lgamma(beta / 2.0 + 1.0));
  return {quadrature, closed_form};
}

std::vector<HypothesisTrace> trace_hypotheses(const EnsembleSpec& base,
                                              std::span<const std::size_t> n_values,
                                              const TraceOptions& options) {
  base.validate();
  detail::require(options.trials >= 1, "trials must be >= 1");
  std::vector<HypothesisTrace> traces = {
      {"stability_diag", {}, {}, 4.0 / base.beta},
      {"stability_cross", {}, {}, 0.0},
      {"moment", {}, {}, 0.0},
      {"approx_abs_sqrtlog", {}, {}, 0.0},
      {"approx_sq_log", {}, {}, 0.0},
  };
  for (std::size_t n : n_values) {
    EnsembleSpec spec = base;
    spec.n = n;
    spec.validate();
    detail::require(n >= 2, "diagnostic n-grid values must be >= 2");
    std::vector<std::array<double, 5>> per_trial(options.trials);
    const std::uint64_t grid_seed = mix64(options.seed, n);
    parallel_for(options.trials, options.workers, [&](std::size_t trial) {
      auto rng = RandomStream::for_trial(grid_seed, trial);
      const auto path = draw_path(spec, rng);
      const auto approx = approx_statistic(path, options.theta1, spec);
      per_trial[trial] = {stability_statistic(path, options.theta1, options.theta1, spec),
                          stability_statistic(path, options.theta1, options.theta2, spec),
                          moment_statistic(path, options.theta1, spec),
                          approx.abs_over_sqrt_log, approx.square_over_log};
    });
    for (std::size_t s = 0; s < traces.size(); ++s) {
      double mean = 0.0;
      for (const auto& row : per_trial) mean += row[s];
      traces[s].n_values.push_back(n);
      traces[s].statistic_values.push_back(mean / static_cast<double>(options.trials));
    }
  }
  return traces;
}

}  // namespace betaens
