#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "betaens/ensembles.hpp"

namespace betaens {

/// How counts are turned into fluctuation statistics.
///  - count: √(π²β/log n)·(N − mean count), the integer count statistic.
///  - phase: √(β/(4 log n))·(ψ − (steps)·θ) on the unrounded terminal phases.
/// Both have the same Gaussian limit (variance 1 per Jacobi angle, 2 per arc).
enum class Normalization { count, phase };

/// One column of a fluctuation experiment. Circular columns are arcs
/// (lo, hi]; Jacobi columns are N_n(θ) with lo = 0 and hi = θ.
struct StatisticColumn {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
};

/// trials × J matrix of normalized statistics, stored row-major.
struct FluctuationSample {
  EnsembleSpec spec;
  std::vector<double> thetas;
  std::vector<StatisticColumn> columns;
  std::size_t trials = 0;
  std::vector<std::size_t> counts;
  std::vector<double> values;
  Normalization normalization = Normalization::count;
  /// Variance of each column in the n → ∞ limit (2 for arcs, 1 for Jacobi).
  double limit_variance = 1.0;

  std::size_t width() const noexcept { return columns.size(); }
  double value(std::size_t trial, std::size_t column) const {
    return values[trial * width() + column];
  }
  std::size_t count(std::size_t trial, std::size_t column) const {
    return counts[trial * width() + column];
  }
};

struct ExperimentReport {
  std::vector<double> mean;
  std::vector<double> covariance;  ///< J×J, row-major
  std::vector<double> ks_distance;
  std::vector<double> ks_pvalue;
  std::vector<double> skewness;
  std::vector<double> excess_kurtosis;
  std::size_t trials = 0;
  std::size_t n = 0;
  double beta = 0.0;
  double limit_variance = 1.0;

  std::size_t width() const noexcept { return mean.size(); }
  double cov(std::size_t i, std::size_t j) const { return covariance[i * width() + j]; }
  double correlation(std::size_t i, std::size_t j) const;
};

struct ExperimentOptions {
  Normalization normalization = Normalization::count;
  std::size_t workers = 1;
};

double normalize_circular(std::size_t count, std::size_t n, double beta, double theta_lo,
                          double theta_hi);
double normalize_jacobi(std::size_t count, std::size_t n, double beta, double theta);
double normalize_circular_phase(double psi_lo, double psi_hi, std::size_t n, double beta,
                                double theta_lo, double theta_hi);
double normalize_jacobi_phase(double psi, std::size_t n, double beta, double theta);

/// Columns for the given angles: all arcs (θ_j, θ_l], j < l, for the circular
/// ensemble; one column per angle for the Jacobi ensemble.
std::vector<StatisticColumn> experiment_columns(EnsembleKind kind, std::span<const double> thetas);

/// `trials` independent samples, each counted at every column through the
/// O(n) terminal-phase route. Trial i uses RandomStream::for_trial(seed, i),
/// so the matrix is identical for any worker count.
FluctuationSample run_fluctuation_experiment(const EnsembleSpec& spec,
                                             std::span<const double> thetas, std::size_t trials,
                                             std::uint64_t seed,
                                             const ExperimentOptions& options = {});

/// Column means, sample covariance, higher moments and a KS test of every
/// column against N(0, limit_variance).
ExperimentReport summarize(const FluctuationSample& sample);

struct KsResult {
  double d;
  double p;
};

/// P(K > x) for the Kolmogorov distribution, series truncated at 100 terms.
double kolmogorov_survival(double x);

/// One-sample KS test of `values` (at least 8) against a continuous cdf.
KsResult ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf);

double normal_cdf(double x, double variance = 1.0);

struct ChiSquareResult {
  double statistic;
  std::size_t dof;
  double p;
};

/// Upper tail of the χ² distribution.
double chi_square_pvalue(double statistic, std::size_t dof);

/// Goodness of fit of observed bin counts to bin probabilities. Adjacent bins
/// are pooled until each pooled bin expects at least `min_expected` hits.
ChiSquareResult chi_square_goodness(std::span<const std::size_t> observed,
                                    std::span<const double> probabilities,
                                    double min_expected = 5.0);

/// Two-sample homogeneity test on histograms over the same bins, pooling
/// sparse bins as above.
ChiSquareResult chi_square_homogeneity(std::span<const std::size_t> first,
                                       std::span<const std::size_t> second,
                                       double min_expected = 5.0);

}  // namespace betaens
