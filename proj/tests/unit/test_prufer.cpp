#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "betaens/ensembles.hpp"
#include "betaens/error.hpp"
#include "betaens/prufer.hpp"
#include "oracles.hpp"

using namespace betaens;

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> random_disk_point(RandomStream& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, 2 * kPi * rng.uniform());
}

VerblunskyPath random_complex_path(std::size_t m, RandomStream& rng, double radius = 0.95) {
  VerblunskyPath path;
  path.eta = 0.0;
  for (std::size_t k = 0; k < m; ++k) path.alphas.push_back(random_disk_point(rng, radius));
  return path;
}

VerblunskyPath random_real_path(std::size_t m, RandomStream& rng, double radius = 0.95) {
  VerblunskyPath path;
  for (std::size_t k = 0; k < m; ++k) path.alphas.emplace_back(radius * (2 * rng.uniform() - 1), 0.0);
  return path;
}

}  // namespace

TEST(Upsilon, VanishesAtZeroCoefficient) {
  for (double psi : {-3.0, 0.0, 0.4, 2.9}) EXPECT_EQ(upsilon(psi, 0.0), 0.0);
}

TEST(Upsilon, RealCoefficientAtZeroPhase) {
  for (double a : {-0.9, -0.2, 0.5, 0.99}) EXPECT_EQ(upsilon(0.0, a), 0.0);
}

TEST(Upsilon, MatchesPowerSeries) {
  EXPECT_NEAR(upsilon(kPi / 4, 0.3), oracle::upsilon_series(kPi / 4, 0.3), 1e-12);
  RandomStream rng(41);
  for (int i = 0; i < 2000; ++i) {
    const auto alpha = random_disk_point(rng, 0.5);
    const double psi = 2 * kPi * rng.uniform() - kPi;
    ASSERT_NEAR(upsilon(psi, alpha), oracle::upsilon_series(psi, alpha), 1e-12);
  }
}

TEST(Upsilon, RangeStaysInsideOpenInterval) {
  RandomStream rng(42);
  for (int i = 0; i < 20000; ++i) {
    const auto alpha = random_disk_point(rng, 0.999999);
    const double v = upsilon(20 * rng.uniform() - 10, alpha);
    ASSERT_GT(v, -kPi);
    ASSERT_LT(v, kPi);
  }
}

TEST(Upsilon, RejectsCoefficientsOutsideDisk) {
  EXPECT_THROW(upsilon(0.1, 1.0), ParameterError);
  EXPECT_THROW(upsilon(0.1, std::complex<double>(0.8, 0.7)), ParameterError);
  EXPECT_THROW(upsilon(0.1, std::complex<double>(std::nan(""), 0.0)), ParameterError);
}

TEST(Upsilon, RealOverloadIsBitIdentical) {
  RandomStream rng(43);
  for (int i = 0; i < 5000; ++i) {
    const double a = 2 * rng.uniform() - 1;
    const double psi = 12 * rng.uniform() - 6;
    ASSERT_EQ(detail::upsilon_unchecked(psi, a),
              detail::upsilon_unchecked(psi, std::complex<double>(a, 0.0)));
  }
}

TEST(UpsilonTilde, CircularLinearization) {
  EXPECT_EQ(upsilon_tilde_c(1.3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(upsilon_tilde_c(0.0, std::complex<double>(0.0, 0.25)), 0.5);
  EXPECT_NEAR(upsilon_tilde_c(kPi / 2, 0.25), 0.5, 1e-15);
  // First-order agreement with Υ for small α.
  const std::complex<double> small(1e-5, -2e-5);
  EXPECT_NEAR(upsilon(0.7, small), upsilon_tilde_c(0.7, small), 1e-9);
}

TEST(UpsilonTilde, JacobiLinearization) {
  EXPECT_EQ(upsilon_tilde_j(1.1, 0.3, 0.3), 0.0);
  EXPECT_EQ(upsilon_tilde_j(0.0, 0.9, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(upsilon_tilde_j(kPi / 2, 0.5, 0.25), 0.5);
}

TEST(Evolve, ZeroPathIsLinear) {
  VerblunskyPath path;
  path.alphas.assign(40, 0.0);
  for (double theta : {-2.5, 0.3, kPi / 2}) {
    const auto traj = evolve_phase(theta, path, true);
    ASSERT_EQ(traj.psi.size(), 41u);
    double expected = theta;
    for (std::size_t k = 0; k <= 40; ++k) {
      ASSERT_DOUBLE_EQ(traj.psi[k], expected);
      expected += theta;
    }
  }
}

TEST(Evolve, TerminalOnlyMatchesHistory) {
  RandomStream rng(44);
  const auto path = random_complex_path(60, rng);
  const auto full = evolve_phase(0.8, path, true);
  const auto last = evolve_phase(0.8, path, false);
  EXPECT_TRUE(full.full_history);
  EXPECT_FALSE(last.full_history);
  EXPECT_EQ(last.terminal(), full.terminal());
  const double thetas[] = {-1.0, 0.8, 2.0};
  const auto many = evolve_terminal_phases(thetas, path);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(many[j], evolve_phase(thetas[j], path, false).terminal());
}

TEST(Evolve, RealPathsAreOdd) {
  RandomStream rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const auto path = random_real_path(100, rng);
    for (double theta : {0.1, 1.0, 2.2, 3.1}) {
      const auto plus = evolve_phase(theta, path, true);
      const auto minus = evolve_phase(-theta, path, true);
      for (std::size_t k = 0; k < plus.psi.size(); ++k) {
        ASSERT_NEAR(plus.psi[k], -minus.psi[k], 1e-12);
      }
    }
  }
}

TEST(Evolve, StrictlyIncreasingInTheta) {
  RandomStream rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const auto path = random_complex_path(80, rng, 0.99);
    std::vector<double> thetas;
    for (int i = 0; i < 400; ++i) thetas.push_back(-kPi + 2 * kPi * (i + 0.5) / 400);
    const auto psi = evolve_terminal_phases(thetas, path);
    for (std::size_t i = 1; i < psi.size(); ++i) ASSERT_GT(psi[i], psi[i - 1]);
  }
}

TEST(Evolve, IncrementsStayWithinHalfTurn) {
  RandomStream rng(47);
  const auto path = random_complex_path(200, rng, 0.999);
  const double theta = 0.37;
  const auto traj = evolve_phase(theta, path, true);
  for (std::size_t k = 1; k < traj.psi.size(); ++k) {
    const double step = traj.psi[k] - traj.psi[k - 1];
    ASSERT_GT(step, theta - kPi);
    ASSERT_LT(step, theta + kPi);
  }
}

TEST(Evolve, RealPathWindsToMultipleOfPi) {
  RandomStream rng(48);
  for (int trial = 0; trial < 10; ++trial) {
    const auto path = random_real_path(50, rng, 0.5);
    const auto traj = evolve_phase(kPi - 1e-9, path, true);
    for (std::size_t k = 0; k < traj.psi.size(); ++k) {
      ASSERT_NEAR(traj.psi[k], (k + 1) * kPi, 1e-3) << k;
    }
  }
}

TEST(Path, ValidationAndReality) {
  VerblunskyPath path;
  path.alphas = {0.1, {0.2, 0.3}};
  EXPECT_FALSE(path.is_real());
  EXPECT_NO_THROW(path.validate());
  path.alphas.push_back(1.0);
  EXPECT_THROW(path.validate(), ParameterError);
  VerblunskyPath real;
  real.alphas = {0.1, -0.4};
  EXPECT_TRUE(real.is_real());
  real.eta = 2 * kPi;
  EXPECT_THROW(real.validate(), ParameterError);
  EXPECT_THROW(evolve_phase(0.3, path, false), ParameterError);
}
