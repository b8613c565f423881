#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "betaens/ensembles.hpp"
#include "betaens/error.hpp"
#include "betaens/statistics.hpp"
#include "oracles.hpp"

using namespace betaens;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t brute_count(const std::vector<double>& pts, double lo, double hi) {
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [&](double x) { return lo < x && x <= hi; }));
}

}  // namespace

TEST(Spec, Validation) {
  EXPECT_THROW((EnsembleSpec{EnsembleKind::circular, 0, 2.0}.validate()), ParameterError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::circular, 4, 0.0}.validate()), ParameterError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::jacobi, 4, 1.0, 0.0, 1.0}.validate()), ParameterError);
  EXPECT_NO_THROW((EnsembleSpec{EnsembleKind::circular, 1, 1e-3}.validate()));
  EXPECT_EQ((EnsembleSpec{EnsembleKind::circular, 10}.path_length()), 9u);
  EXPECT_EQ((EnsembleSpec{EnsembleKind::jacobi, 10}.path_length()), 19u);
}

TEST(Laws, CoefficientParameters) {
  EXPECT_DOUBLE_EQ(circular_coefficient_law(2.0, 0).nu(), 3.0);
  EXPECT_DOUBLE_EQ(circular_coefficient_law(0.5, 9).nu(), 6.0);
  const auto even = jacobi_coefficient_law(2.0, 1.0, 3.0, 4);
  EXPECT_DOUBLE_EQ(even.s(), 3.0);
  EXPECT_DOUBLE_EQ(even.t(), 5.0);
  const auto odd = jacobi_coefficient_law(2.0, 1.0, 3.0, 5);
  EXPECT_DOUBLE_EQ(odd.s(), 6.0);
  EXPECT_DOUBLE_EQ(odd.t(), 3.0);
}

TEST(CircularPath, SecondMomentOfCoefficients) {
  RandomStream rng(61);
  constexpr int draws = 1'000'000;
  const double beta = 2.0;
  for (std::size_t k : {0u, 3u, 40u}) {
    std::vector<double> r2(draws);
    for (auto& x : r2) x = std::norm(sample_theta(circular_coefficient_law(beta, k), rng).value);
    const auto [mean, se] = oracle::mean_and_error(r2);
    EXPECT_NEAR(mean, 2.0 / (beta * (k + 1) + 2.0), 4 * se) << k;
  }
}

TEST(CircularPath, ShapeAndDeterminism) {
  RandomStream a(62), b(62);
  const auto p = draw_circular_path(30, 1.5, a);
  const auto q = draw_circular_path(30, 1.5, b);
  EXPECT_EQ(p.size(), 29u);
  ASSERT_TRUE(p.eta.has_value());
  EXPECT_GE(*p.eta, 0.0);
  EXPECT_LT(*p.eta, 2 * kPi);
  EXPECT_EQ(p.alphas, q.alphas);
  EXPECT_EQ(*p.eta, *q.eta);
  RandomStream c(62);
  EXPECT_EQ(draw_circular_path(1, 1.5, c).size(), 0u);
}

TEST(JacobiPath, RealCoefficientsWithCorrectFirstMean) {
  RandomStream rng(63);
  const auto path = draw_jacobi_path(20, 1.0, 0.5, 2.0, rng);
  EXPECT_EQ(path.size(), 39u);
  EXPECT_TRUE(path.is_real());
  EXPECT_FALSE(path.eta.has_value());
  constexpr int draws = 1'000'000;
  const double a = 0.5, b = 2.0;
  std::vector<double> x(draws);
  for (auto& v : x) v = sample_sym_beta(jacobi_coefficient_law(1.0, a, b, 0), rng);
  const auto [mean, se] = oracle::mean_and_error(x);
  EXPECT_NEAR(mean, (b - a) / (a + b), 4 * se);
}

TEST(Points, SinglePointCircle) {
  RandomStream rng(64);
  const EnsembleSpec spec{EnsembleKind::circular, 1, 2.0};
  const auto path = draw_path(spec, rng);
  const auto pts = points_from_path(spec, path);
  ASSERT_EQ(pts.points.size(), 1u);
  EXPECT_NEAR(std::remainder(pts.points[0] + *path.eta, 2 * kPi), 0.0, 1e-9);
}

TEST(Points, ZeroPathGivesEquallySpacedPoints) {
  const EnsembleSpec spec{EnsembleKind::circular, 6, 2.0};
  VerblunskyPath path;
  path.alphas.assign(5, 0.0);
  path.eta = 0.0;
  const auto pts = points_from_path(spec, path).points;
  ASSERT_EQ(pts.size(), 6u);
  for (std::size_t j = 1; j < 6; ++j) EXPECT_NEAR(pts[j] - pts[j - 1], kPi / 3, 1e-9);
}

TEST(Points, JacobiPointsAreRealAndSorted) {
  RandomStream rng(65);
  for (double beta : {0.5, 2.0, 6.0}) {
    const EnsembleSpec spec{EnsembleKind::jacobi, 13, beta, 1.5, 0.7};
    const auto pts = sample_points(spec, rng).points;
    ASSERT_EQ(pts.size(), 13u);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      EXPECT_GT(pts[j], -2.0);
      EXPECT_LT(pts[j], 2.0);
      if (j > 0) EXPECT_GT(pts[j], pts[j - 1]);
    }
  }
}

TEST(Points, CircularMeanArcCount) {
  RandomStream rng(66);
  const EnsembleSpec spec{EnsembleKind::circular, 32, 2.0};
  const double lo = -0.4, hi = 1.1;
  std::vector<double> counts;
  for (int t = 0; t < 2000; ++t) {
    counts.push_back(static_cast<double>(brute_count(sample_points(spec, rng).points, lo, hi)));
  }
  const auto [mean, se] = oracle::mean_and_error(counts);
  EXPECT_NEAR(mean, 32 * (hi - lo) / (2 * kPi), 4 * se + 1e-12);
}

TEST(Counting, ZeroPathExactArcCount) {
  VerblunskyPath path;
  path.alphas.assign(7, 0.0);
  path.eta = 0.0;
  EXPECT_EQ(count_in_arc(path, 8, 0.0, kPi / 2).count, 2u);
  EXPECT_EQ(count_in_arc(path, 8, -0.1, 0.1).count, 1u);
}

TEST(Counting, NearlyFullCircleHoldsAllPoints) {
  RandomStream rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto path = draw_circular_path(40, 1.0, rng);
    const auto pts = points_from_path({EnsembleKind::circular, 40, 1.0}, path).points;
    const double lo = -kPi + 1e-12, hi = kPi - 1e-12;
    EXPECT_EQ(count_in_arc(path, 40, lo, hi).count, brute_count(pts, lo, hi));
    EXPECT_GE(count_in_arc(path, 40, lo, hi).count, 39u);
  }
}

TEST(Counting, PhaseCountMatchesRootFinding) {
  RandomStream rng(68);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + trial;
    const EnsembleSpec circ{EnsembleKind::circular, n, 0.5 + 0.1 * trial};
    const auto cpath = draw_path(circ, rng);
    const auto cpts = points_from_path(circ, cpath).points;
    const EnsembleSpec jac{EnsembleKind::jacobi, n, 0.5 + 0.1 * trial, 1.0, 2.5};
    const auto jpath = draw_path(jac, rng);
    const auto jpts = points_from_path(jac, jpath).points;
    for (int i = 0; i < 10; ++i) {
      double lo = -kPi + 2 * kPi * rng.uniform();
      double hi = -kPi + 2 * kPi * rng.uniform();
      if (lo > hi) std::swap(lo, hi);
      ASSERT_EQ(count_in_arc(cpath, n, lo, hi).count, brute_count(cpts, lo, hi));
      const double theta = kPi * rng.uniform();
      ASSERT_EQ(count_jacobi(jpath, n, theta).count,
                brute_count(jpts, 2 * std::cos(theta), 2.0));
    }
  }
}

TEST(Counting, JacobiLimits) {
  RandomStream rng(69);
  const auto path = draw_jacobi_path(30, 2.0, 1.0, 1.0, rng);
  EXPECT_EQ(count_jacobi(path, 30, 1e-12).count, 0u);
  EXPECT_EQ(count_jacobi(path, 30, kPi - 1e-12).count, 30u);
  std::size_t previous = 0;
  for (int i = 1; i < 100; ++i) {
    const auto c = count_jacobi(path, 30, kPi * i / 100).count;
    EXPECT_GE(c, previous);
    previous = c;
  }
  EXPECT_THROW(count_jacobi(path, 30, 0.0), ParameterError);
  EXPECT_THROW(count_jacobi(path, 30, kPi), ParameterError);
  EXPECT_THROW(count_jacobi(path, 29, 1.0), ParameterError);
}

TEST(Counting, ArcDomainErrors) {
  RandomStream rng(70);
  const auto path = draw_circular_path(10, 2.0, rng);
  EXPECT_THROW(count_in_arc(path, 10, 1.0, 0.5), ParameterError);
  EXPECT_THROW(count_in_arc(path, 10, -kPi, 0.5), ParameterError);
  EXPECT_THROW(count_in_arc(path, 9, 0.0, 0.5), ParameterError);
  VerblunskyPath no_eta = path;
  no_eta.eta.reset();
  EXPECT_THROW(count_in_arc(no_eta, 10, 0.0, 0.5), ParameterError);
}

TEST(Counting, StreamingPhasesMatchStoredPath) {
  for (auto kind : {EnsembleKind::circular, EnsembleKind::jacobi}) {
    const EnsembleSpec spec{kind, 300, 1.3, 0.8, 1.9};
    const double thetas[] = {0.2, 1.0, 2.5};
    RandomStream a(71), b(71);
    const auto streamed = sample_terminal_phases(spec, thetas, a);
    const auto path = draw_path(spec, b);
    const auto stored = evolve_terminal_phases(thetas, path);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(streamed.psi[j], stored[j]);
    if (kind == EnsembleKind::circular) EXPECT_EQ(streamed.eta, *path.eta);
  }
}

TEST(Counting, RotationInvariance) {
  // Counts in two congruent arcs follow the same law.
  RandomStream rng(72);
  const EnsembleSpec spec{EnsembleKind::circular, 64, 2.0};
  const double width = 0.9;
  const double thetas[] = {-2.5, -2.5 + width, 0.7, 0.7 + width};
  std::vector<std::size_t> first(20, 0), second(20, 0);
  for (int t = 0; t < 10000; ++t) {
    const auto ph = sample_terminal_phases(spec, thetas, rng);
    ++first[std::min<std::size_t>(19, arc_count_from_phases(ph.psi[0], ph.psi[1], ph.eta))];
    ++second[std::min<std::size_t>(19, arc_count_from_phases(ph.psi[2], ph.psi[3], ph.eta))];
  }
  const auto chi = chi_square_homogeneity(first, second);
  EXPECT_GT(chi.p, 1e-3) << chi.statistic << " dof " << chi.dof;
}
