#include "betaens/statistics.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "betaens/error.hpp"
#include "betaens/parallel.hpp"

namespace betaens {
namespace {

constexpr double kPi = std::numbers::pi;

double log_n(std::size_t n) {
  detail::require(n >= 2, "normalization needs n >= 2 (log n > 0)");
  return std::log(static_cast<double>(n));
}

// Index pairs (j, l), j < l, matching experiment_columns for the circle.
std::vector<std::pair<std::size_t, std::size_t>> arc_pairs(std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t l = j + 1; l < count; ++l) pairs.emplace_back(j, l);
  }
  return pairs;
}

void validate_thetas(EnsembleKind kind, std::span<const double> thetas) {
  detail::require(!thetas.empty(), "at least one angle is required");
  for (std::size_t j = 0; j < thetas.size(); ++j) {
    const double t = thetas[j];
    if (kind == EnsembleKind::circular) {
      detail::require(-kPi < t && t < kPi, "circular angles must lie in (-pi, pi)");
    } else {
      detail::require(0.0 < t && t < kPi, "Jacobi angles must lie in (0, pi)");
    }
    if (j > 0) detail::require(thetas[j - 1] < t, "angles must be sorted and distinct");
  }
  if (kind == EnsembleKind::circular) {
    detail::require(thetas.size() >= 2, "circular experiments need at least two angles (one arc)");
  }
}

// Pools adjacent bins (left to right) until each pooled bin reaches the
// threshold on `weight`; a short remainder joins the last pooled bin.
template <typename Weight>
std::vector<std::pair<std::size_t, std::size_t>> pool_bins(std::size_t bins, double min_weight,
                                                           Weight weight) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [first, last)
  std::size_t start = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    acc += weight(i);
    if (acc >= min_weight) {
      groups.emplace_back(start, i + 1);
      start = i + 1;
      acc = 0.0;
    }
  }
  if (start < bins) {
    if (groups.empty()) {
      groups.emplace_back(start, bins);
    } else {
      groups.back().second = bins;
    }
  }
  return groups;
}

}  // namespace

double ExperimentReport::correlation(std::size_t i, std::size_t j) const {
  return cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
}

double normalize_circular(std::size_t count, std::size_t n, double beta, double theta_lo,
                          double theta_hi) {
  const double mean = static_cast<double>(n) * (theta_hi - theta_lo) / (2.0 * kPi);
  return std::sqrt(kPi * kPi * beta / log_n(n)) * (static_cast<double>(count) - mean);
}

double normalize_jacobi(std::size_t count, std::size_t n, double beta, double theta) {
  const double mean = static_cast<double>(n) * theta / kPi;
  return std::sqrt(kPi * kPi * beta / log_n(n)) * (static_cast<double>(count) - mean);
}

double normalize_circular_phase(double psi_lo, double psi_hi, std::size_t n, double beta,
                                double theta_lo, double theta_hi) {
  const auto nd = static_cast<double>(n);
  const double centered = (psi_hi - nd * theta_hi) - (psi_lo - nd * theta_lo);
  return std::sqrt(beta / (4.0 * log_n(n))) * centered;
}

double normalize_jacobi_phase(double psi, std::size_t n, double beta, double theta) {
  const double steps = 2.0 * static_cast<double>(n);
  return std::sqrt(beta / (4.0 * log_n(n))) * (psi - steps * theta);
}

std::vector<StatisticColumn> experiment_columns(EnsembleKind kind,
                                                std::span<const double> thetas) {
  std::vector<StatisticColumn> columns;
  if (kind == EnsembleKind::circular) {
    for (const auto& [j, l] : arc_pairs(thetas.size())) columns.push_back({thetas[j], thetas[l]});
  } else {
    for (double t : thetas) columns.push_back({0.0, t});
  }
  return columns;
}

FluctuationSample run_fluctuation_experiment(const EnsembleSpec& spec,
                                             std::span<const double> thetas, std::size_t trials,
                                             std::uint64_t seed,
                                             const ExperimentOptions& options) {
  spec.validate();
  validate_thetas(spec.kind, thetas);
  detail::require(trials >= 1, "trials must be >= 1");
  detail::require(spec.n >= 2, "fluctuation experiments need n >= 2");

  FluctuationSample sample;
  sample.spec = spec;
  sample.thetas.assign(thetas.begin(), thetas.end());
  sample.columns = experiment_columns(spec.kind, thetas);
  sample.trials = trials;
  sample.normalization = options.normalization;
  sample.limit_variance = spec.kind == EnsembleKind::circular ? 2.0 : 1.0;
  const std::size_t width = sample.columns.size();
  sample.counts.assign(trials * width, 0);
  sample.values.assign(trials * width, 0.0);
  const auto pairs = arc_pairs(thetas.size());
  const bool by_phase = options.normalization == Normalization::phase;

  parallel_for(trials, options.workers, [&](std::size_t trial) {
    auto rng = RandomStream::for_trial(seed, trial);
    const auto phases = sample_terminal_phases(spec, thetas, rng);
    const std::size_t row = trial * width;
    if (spec.kind == EnsembleKind::circular) {
      for (std::size_t c = 0; c < width; ++c) {
        const auto [j, l] = pairs[c];
        const std::size_t count = arc_count_from_phases(phases.psi[j], phases.psi[l], phases.eta);
        sample.counts[row + c] = count;
        sample.values[row + c] =
            by_phase ? normalize_circular_phase(phases.psi[j], phases.psi[l], spec.n, spec.beta,
                                                thetas[j], thetas[l])
                     : normalize_circular(count, spec.n, spec.beta, thetas[j], thetas[l]);
      }
    } else {
      for (std::size_t c = 0; c < width; ++c) {
        const std::size_t count = jacobi_count_from_phase(phases.psi[c]);
        sample.counts[row + c] = count;
        sample.values[row + c] =
            by_phase ? normalize_jacobi_phase(phases.psi[c], spec.n, spec.beta, thetas[c])
                     : normalize_jacobi(count, spec.n, spec.beta, thetas[c]);
      }
    }
  });
  return sample;
}

ExperimentReport summarize(const FluctuationSample& sample) {
  const std::size_t trials = sample.trials;
  const std::size_t width = sample.width();
  detail::require(trials >= 2, "summarize needs at least two trials");
  detail::require(width >= 1, "summarize needs at least one column");

  ExperimentReport report;
  report.trials = trials;
  report.n = sample.spec.n;
  report.beta = sample.spec.beta;
  report.limit_variance = sample.limit_variance;
  report.mean.assign(width, 0.0);
  for (std::size_t i = 0; i < trials; ++i) {
    for (std::size_t c = 0; c < width; ++c) report.mean[c] += sample.value(i, c);
  }
  for (auto& m : report.mean) m /= static_cast<double>(trials);

  report.covariance.assign(width * width, 0.0);
  std::vector<double> m3(width, 0.0);
  std::vector<double> m4(width, 0.0);
  for (std::size_t i = 0; i < trials; ++i) {
    for (std::size_t c = 0; c < width; ++c) {
      const double dc = sample.value(i, c) - report.mean[c];
      for (std::size_t d = 0; d < width; ++d) {
        report.covariance[c * width + d] += dc * (sample.value(i, d) - report.mean[d]);
      }
      m3[c] += dc * dc * dc;
      m4[c] += dc * dc * dc * dc;
    }
  }
  for (auto& v : report.covariance) v /= static_cast<double>(trials - 1);

  const double sd_limit = std::sqrt(sample.limit_variance);
  std::vector<double> column(trials);
  for (std::size_t c = 0; c < width; ++c) {
    const double var_unbiased = report.covariance[c * width + c];
    if (!(var_unbiased > 0.0)) {
      throw NumericalError("column " + std::to_string(c) + " is constant; moments are undefined");
    }
    const double m2 = var_unbiased * static_cast<double>(trials - 1) / static_cast<double>(trials);
    report.skewness.push_back(m3[c] / static_cast<double>(trials) / std::pow(m2, 1.5));
    report.excess_kurtosis.push_back(m4[c] / static_cast<double>(trials) / (m2 * m2) - 3.0);
    if (trials >= 8) {
      for (std::size_t i = 0; i < trials; ++i) column[i] = sample.value(i, c);
      const auto ks = ks_statistic(column, [&](double x) { return normal_cdf(x / sd_limit); });
      report.ks_distance.push_back(ks.d);
      report.ks_pvalue.push_back(ks.p);
    } else {
      report.ks_distance.push_back(std::numeric_limits<double>::quiet_NaN());
      report.ks_pvalue.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return report;
}

double kolmogorov_survival(double x) {
  // Below 0.2 the distribution function is < 1e−10; the series would need
  // far more than 100 terms there.
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.size() < 8) {
    throw ParameterError("KS test needs at least 8 values, got " + std::to_string(values.size()));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto id = static_cast<double>(i);
    d = std::max({d, f - id / m, (id + 1.0) / m - f});
  }
  return {d, kolmogorov_survival(std::sqrt(m) * d)};
}

double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double chi_square_pvalue(double statistic, std::size_t dof) {
  detail::require(dof >= 1, "chi-square needs at least one degree of freedom");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

ChiSquareResult chi_square_goodness(std::span<const std::size_t> observed,
                                    std::span<const double> probabilities,
                                    double min_expected) {
  detail::require(observed.size() == probabilities.size() && observed.size() >= 2,
                  "chi-square needs matching observed/probability bins");
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  const auto groups = pool_bins(observed.size(), min_expected,
                                [&](std::size_t i) { return total * probabilities[i]; });
  detail::require(groups.size() >= 2, "too few populated bins for a chi-square test");
  double stat = 0.0;
  for (const auto& [first, last] : groups) {
    double o = 0.0;
    double e = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      o += static_cast<double>(observed[i]);
      e += total * probabilities[i];
    }
    stat += (o - e) * (o - e) / e;
  }
  const std::size_t dof = groups.size() - 1;
  return {stat, dof, chi_square_pvalue(stat, dof)};
}

ChiSquareResult chi_square_homogeneity(std::span<const std::size_t> first,
                                       std::span<const std::size_t> second,
                                       double min_expected) {
  detail::require(first.size() == second.size() && !first.empty(),
                  "homogeneity test needs histograms over the same bins");
  double n1 = 0.0;
  double n2 = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    n1 += static_cast<double>(first[i]);
    n2 += static_cast<double>(second[i]);
  }
  const double smaller_share = std::min(n1, n2) / (n1 + n2);
  const auto groups = pool_bins(first.size(), min_expected, [&](std::size_t i) {
    return smaller_share * static_cast<double>(first[i] + second[i]);
  });
  detail::require(groups.size() >= 2, "too few populated bins for a chi-square test");
  double stat = 0.0;
  for (const auto& [lo, hi] : groups) {
    double o1 = 0.0;
    double o2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      o1 += static_cast<double>(first[i]);
      o2 += static_cast<double>(second[i]);
    }
    const double pooled = (o1 + o2) / (n1 + n2);
    const double e1 = n1 * pooled;
    const double e2 = n2 * pooled;
    stat += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
  }
  const std::size_t dof = groups.size() - 1;
  return {stat, dof, chi_square_pvalue(stat, dof)};
}

}  // namespace betaens
