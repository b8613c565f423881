#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "betaens/error.hpp"
#include "betaens/statistics.hpp"
#include "oracles.hpp"

using namespace betaens;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TEST(Normalize, CircularCountForm) {
  // n = 8 and an arc of π/2 expect two points.
  EXPECT_NEAR(normalize_circular(2, 8, 1.0, 0.0, kPi / 2), 0.0, 1e-15);
  EXPECT_NEAR(normalize_circular(3, 8, 1.0, 0.0, kPi / 2), kPi / std::sqrt(std::log(8.0)), 1e-14);
  EXPECT_NEAR(normalize_circular(1, 8, 4.0, 0.0, kPi / 2),
              -std::sqrt(kPi * kPi * 4.0 / std::log(8.0)), 1e-14);
  EXPECT_THROW(normalize_circular(1, 1, 2.0, 0.0, 1.0), ParameterError);
}

TEST(Normalize, JacobiCountForm) {
  EXPECT_NEAR(normalize_jacobi(4, 8, 2.0, kPi / 2), 0.0, 1e-15);
  EXPECT_NEAR(normalize_jacobi(5, 8, 2.0, kPi / 2), std::sqrt(2 * kPi * kPi / std::log(8.0)), 1e-14);
}

TEST(Normalize, PhaseForms) {
  // Phases exactly on their deterministic drift give zero.
  EXPECT_NEAR(normalize_circular_phase(7 * 0.1, 7 * 0.9, 7, 2.0, 0.1, 0.9), 0.0, 1e-15);
  EXPECT_NEAR(normalize_jacobi_phase(8 * 1.2, 4, 2.0, 1.2), 0.0, 1e-15);
  EXPECT_NEAR(normalize_jacobi_phase(8 * 1.2 + 1.0, 4, 2.0, 1.2),
              std::sqrt(2.0 / (4 * std::log(4.0))), 1e-15);
}

TEST(Columns, Layout) {
  const double thetas[] = {-1.0, 0.0, 2.0};
  const auto circ = experiment_columns(EnsembleKind::circular, thetas);
  ASSERT_EQ(circ.size(), 3u);
  EXPECT_EQ(circ[0].theta_lo, -1.0);
  EXPECT_EQ(circ[0].theta_hi, 0.0);
  EXPECT_EQ(circ[1].theta_hi, 2.0);
  EXPECT_EQ(circ[2].theta_lo, 0.0);
  const double jt[] = {0.5, 1.5};
  const auto jac = experiment_columns(EnsembleKind::jacobi, jt);
  ASSERT_EQ(jac.size(), 2u);
  EXPECT_EQ(jac[1].theta_hi, 1.5);
}

TEST(Experiment, ShapeAndValidation) {
  const EnsembleSpec spec{EnsembleKind::circular, 32, 2.0};
  const double thetas[] = {0.0, 1.0};
  const auto one = run_fluctuation_experiment(spec, thetas, 1, 5);
  EXPECT_EQ(one.trials, 1u);
  EXPECT_EQ(one.width(), 1u);
  EXPECT_EQ(one.values.size(), 1u);
  EXPECT_DOUBLE_EQ(one.limit_variance, 2.0);
  const double unsorted[] = {1.0, 0.0};
  EXPECT_THROW(run_fluctuation_experiment(spec, unsorted, 4, 5), ParameterError);
  const double single[] = {1.0};
  EXPECT_THROW(run_fluctuation_experiment(spec, single, 4, 5), ParameterError);
  const double outside[] = {0.0, 4.0};
  EXPECT_THROW(run_fluctuation_experiment(spec, outside, 4, 5), ParameterError);
  const EnsembleSpec jac{EnsembleKind::jacobi, 32, 2.0};
  const double bad_j[] = {0.0, 1.0};
  EXPECT_THROW(run_fluctuation_experiment(jac, bad_j, 4, 5), ParameterError);
  EXPECT_THROW(run_fluctuation_experiment(spec, thetas, 0, 5), ParameterError);
}

TEST(Experiment, CountsAgreeWithValues) {
  const EnsembleSpec spec{EnsembleKind::jacobi, 64, 1.0, 2.0, 0.5};
  const double thetas[] = {0.7, 2.0};
  const auto s = run_fluctuation_experiment(spec, thetas, 20, 9);
  for (std::size_t i = 0; i < s.trials; ++i) {
    for (std::size_t c = 0; c < s.width(); ++c) {
      EXPECT_DOUBLE_EQ(s.value(i, c), normalize_jacobi(s.count(i, c), 64, 1.0, thetas[c]));
    }
  }
}

TEST(Experiment, WorkerCountDoesNotChangeResults) {
  const EnsembleSpec spec{EnsembleKind::circular, 128, 1.0};
  const double thetas[] = {-1.0, 0.5, 2.0};
  const auto a = run_fluctuation_experiment(spec, thetas, 50, 17, {Normalization::count, 1});
  const auto b = run_fluctuation_experiment(spec, thetas, 50, 17, {Normalization::count, 3});
  const auto c = run_fluctuation_experiment(spec, thetas, 50, 17, {Normalization::count, 8});
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values, c.values);
  EXPECT_EQ(a.counts, c.counts);
}

TEST(Experiment, JacobiCenteringIsExactOnAverage) {
  const EnsembleSpec spec{EnsembleKind::jacobi, 256, 2.0, 1.0, 1.0};
  const double thetas[] = {kPi / 2};
  const auto s = run_fluctuation_experiment(spec, thetas, 4000, 21);
  std::vector<double> counts;
  for (std::size_t i = 0; i < s.trials; ++i) counts.push_back(static_cast<double>(s.count(i, 0)));
  const auto [mean, se] = oracle::mean_and_error(counts);
  EXPECT_NEAR(mean, 256 * (kPi / 2) / kPi, 4 * se);
}

TEST(Experiment, EndpointCovarianceStructure) {
  // Arcs (θ1,θ2], (θ2,θ3] and (θ1,θ3] with a short first arc.
  const EnsembleSpec spec{EnsembleKind::circular, 1 << 14, 2.0};
  const double thetas[] = {-kPi / 2, -kPi / 2 + 0.5, kPi / 2 + 0.5};
  const auto report = summarize(run_fluctuation_experiment(spec, thetas, 4000, 23));
  // Columns: (θ1,θ2], (θ1,θ3], (θ2,θ3]. Covariances relative to the limit variance of one endpoint.
  const double unit = report.limit_variance / 2;
  const double adjacent = report.cov(0, 2) / unit;
  const double nested = report.cov(0, 1) / unit;
  EXPECT_LT(adjacent, 0.0);
  EXPECT_GT(nested, 0.0);
  EXPECT_NEAR(adjacent, -1.0, 0.25);
  EXPECT_NEAR(nested, 1.0, 0.25);
}

TEST(Summary, StandardColumnsAndRankOne) {
  FluctuationSample s;
  s.trials = 10000;
  s.columns = {{0, 1}, {0, 2}};
  s.limit_variance = 1.0;
  RandomStream rng(24);
  for (std::size_t i = 0; i < s.trials; ++i) {
    const double z = sample_standard_normal(rng);
    s.values.push_back(z);
    s.values.push_back(z);
  }
  const auto r = summarize(s);
  EXPECT_GT(r.ks_pvalue[0], 1e-3);
  EXPECT_NEAR(r.correlation(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(r.cov(0, 0) * r.cov(1, 1) - r.cov(0, 1) * r.cov(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(r.mean[0], 0.0, 4.0 / std::sqrt(10000.0));
  EXPECT_NEAR(r.skewness[0], 0.0, 0.1);
  EXPECT_NEAR(r.excess_kurtosis[0], 0.0, 0.2);
}

TEST(Summary, ConstantColumnIsDegenerate) {
  FluctuationSample s;
  s.trials = 20;
  s.columns = {{0, 1}};
  s.values.assign(20, 0.5);
  EXPECT_THROW(summarize(s), NumericalError);
  s.trials = 1;
  s.values.assign(1, 0.5);
  EXPECT_THROW(summarize(s), ParameterError);
}

TEST(Kolmogorov, KnownCriticalValues) {
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 2e-4);
  EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_EQ(kolmogorov_survival(0.1), 1.0);
  EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
}

TEST(Kolmogorov, DegenerateSampleIsFarFromUniform) {
  std::vector<double> xs(100, 0.5);
  EXPECT_GE(ks_statistic(xs, uniform_cdf).d, 0.5);
  std::vector<double> seven(7, 0.1);
  EXPECT_THROW(ks_statistic(seven, uniform_cdf), ParameterError);
  std::vector<double> eight = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  EXPECT_NO_THROW(ks_statistic(eight, uniform_cdf));
}

TEST(Kolmogorov, RejectionRateUnderNull) {
  RandomStream rng(25);
  int rejections = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> xs(10000);
    for (auto& x : xs) x = rng.uniform();
    if (ks_statistic(xs, uniform_cdf).p < 0.01) ++rejections;
  }
  // Binomial(200, 0.01): P(X > 8) is about 2e−4.
  EXPECT_LE(rejections, 8);
}

TEST(ChiSquare, TailValues) {
  EXPECT_NEAR(chi_square_pvalue(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_NEAR(chi_square_pvalue(2.0 * 3.0, 6), std::exp(-3.0) * (1 + 3.0 + 4.5), 1e-14);
}

TEST(ChiSquare, GoodnessPoolsSparseBins) {
  const std::vector<std::size_t> observed = {50, 50, 1, 0};
  const std::vector<double> probs = {0.49, 0.49, 0.01, 0.01};
  const auto r = chi_square_goodness(observed, probs);
  EXPECT_EQ(r.dof, 1u);
  EXPECT_GT(r.p, 0.5);
}
