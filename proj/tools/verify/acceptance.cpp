#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "../cli/commands.hpp"
#include "../cli/output.hpp"
#include "betaens/diagnostics.hpp"
#include "betaens/parallel.hpp"
#include "betaens/quadrature.hpp"
#include "betaens/statistics.hpp"
#include "betaens/szego.hpp"
#include "oracles.hpp"

namespace betaens::verify {
namespace {

constexpr double kPi = std::numbers::pi;

// value·(s+t)² along s = t increases towards 3.
constexpr double kLemmaA1Constant = 3.0;
// E|Υ(ψ,α_k)|·(k+1)^{1/2} stays below 1.03 for β=2, a=b=1 at k ≤ 10.
constexpr double kJacobiFirstMomentConstant = 1.5;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string g4(double x) { return fmt("%.4g", x); }

// Running sums for one Monte Carlo estimate.
struct Accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t count = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double standard_error() const {
    const double m = mean();
    const double var = (sumsq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
  }
  // |mean − expected| in standard errors.
  double z(double expected) const { return std::abs(mean() - expected) / standard_error(); }
};

// Raw moments of B(s,t) from g = (1+X)/2 ∼ Beta(t, s) on (0,1).
double beta_raw_moment_oracle(double s, double t, int k) {
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    double eg = 1.0;
    for (int i = 0; i < j; ++i) eg *= (t + i) / (s + t + i);
    total += binom * std::pow(2.0, j) * eg * ((k - j) % 2 == 0 ? 1.0 : -1.0);
    binom = binom * (k - j) / (j + 1);
  }
  return total;
}

Outcome moment_identities(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 1);
  constexpr std::size_t draws = 1'000'000;
  const double nus[] = {2.0, 5.0, 10.0, 50.0};
  const double grid[] = {1.0, 2.0, 5.0, 10.0, 20.0};
  // Jobs 0..3 are Θ_ν, 4..28 the Beta grid.
  std::vector<double> worst(29, 0.0);
  std::vector<double> oracle_err(29, 0.0);
  parallel_for(29, o.workers, [&](std::size_t job) {
    auto rng = RandomStream::for_trial(seed, job);
    if (job < 4) {
      const ThetaParam p(nus[job]);
      Accumulator m2, m4;
      for (std::size_t i = 0; i < draws; ++i) {
        const double r2 = std::norm(sample_theta(p, rng).value);
        m2.add(r2);
        m4.add(r2 * r2);
      }
      const double nu = nus[job];
      worst[job] = std::max(m2.z(2.0 / (nu + 1.0)), m4.z(8.0 / ((nu + 1.0) * (nu + 3.0))));
      const auto closed = theta_moments(p);
      oracle_err[job] = std::max(std::abs(closed.m2 - 2.0 / (nu + 1.0)),
                                 std::abs(closed.m4 - 8.0 / ((nu + 1.0) * (nu + 3.0))));
      return;
    }
    const double s = grid[(job - 4) / 5];
    const double t = grid[(job - 4) % 5];
    const SymBetaParam p(s, t);
    Accumulator acc[4];
    for (std::size_t i = 0; i < draws; ++i) {
      const double x = sample_sym_beta(p, rng);
      const double x2 = x * x;
      acc[0].add(x);
      acc[1].add(x2);
      acc[2].add(x2 * x);
      acc[3].add(x2 * x2);
    }
    const auto m = sym_beta_moments(p);
    const double closed[] = {m.m1, m.m2, m.m3, m.m4};
    for (int k = 0; k < 4; ++k) {
      worst[job] = std::max(worst[job], acc[k].z(closed[k]));
      oracle_err[job] = std::max(oracle_err[job], std::abs(closed[k] - beta_raw_moment_oracle(s, t, k + 1)));
    }
  });
  const double worst_z = *std::max_element(worst.begin(), worst.end());
  const double worst_oracle = *std::max_element(oracle_err.begin(), oracle_err.end());
  return {worst_z < 4.0 && worst_oracle < 1e-12,
          "max |MC - closed form| = " + g4(worst_z) + " SE (limit 4); closed form vs Beta oracle " +
              g4(worst_oracle)};
}

// E{−X² log(1−X²)} by adaptive quadrature with x = ±(1 − u²) at the endpoints.
double neg_x2log_quadrature(double s, double t) {
  const double log_c = oracle::log_beta_normalizer(s, t);
  auto half = [&](double near_shape, double far_shape) {
    // x = ±(1 − u²): the near endpoint distance is u², the far one 2 − u².
    return [=](double u) {
      if (u <= 0.0) return 0.0;
      const double log_near = 2.0 * std::log(u);
      const double log_far = std::log(2.0 - u * u);
      const double x = 1.0 - u * u;
      const double log_w = log_c + (near_shape - 1.0) * log_near + (far_shape - 1.0) * log_far;
      return -x * x * (log_near + log_far) * std::exp(log_w) * 2.0 * u;
    };
  };
  const double right = integrate_adaptive(half(s, t), 0.0, 1.0, 1e-12).value;
  const double left = integrate_adaptive(half(t, s), 0.0, 1.0, 1e-12).value;
  return right + left;
}

Outcome appendix_check(const VerifyOptions&) {
  const double grid[] = {1.0, 2.0, 5.0, 10.0, 20.0};
  double worst_rel = 0.0;
  for (double s : grid) {
    for (double t : grid) {
      const double closed = expected_neg_x2log(SymBetaParam(s, t));
      const double quad = neg_x2log_quadrature(s, t);
      worst_rel = std::max(worst_rel, std::abs(closed - quad) / std::abs(quad));
    }
  }
  double worst_scaled = 0.0;
  for (double s : {5.0, 10.0, 20.0, 40.0}) {
    worst_scaled = std::max(worst_scaled, expected_neg_x2log(SymBetaParam(s, s)) * 4.0 * s * s);
  }
  return {worst_rel < 1e-8 && worst_scaled < kLemmaA1Constant,
          "max relative error " + g4(worst_rel) + " (limit 1e-8); max value*(s+t)^2 " +
              g4(worst_scaled) + " (constant 3)"};
}

Outcome phase_identity(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 3);
  constexpr std::size_t paths = 100;
  constexpr std::size_t kmax = 200;
  const double betas[] = {0.5, 1.0, 2.0, 4.0};
  std::vector<double> worst(2 * paths, 0.0);
  parallel_for(2 * paths, o.workers, [&](std::size_t job) {
    auto rng = RandomStream::for_trial(seed, job);
    const double beta = betas[job % 4];
    const bool circ = job < paths;
    const auto path = circ ? draw_circular_path(kmax + 2, beta, rng)
                           : draw_jacobi_path(kmax / 2 + 1, beta, 0.5 + (job % 3), 1.0, rng);
    for (int i = 0; i < 256; ++i) {
      const double theta = -kPi + 2 * kPi * (i + 0.5) / 256;
      const auto traj = evolve_phase(theta, path, true);
      const auto seq = blaschke_sequence(path, std::polar(1.0, theta), kmax);
      for (std::size_t k = 0; k <= kmax; ++k) {
        worst[job] = std::max(worst[job], std::abs(seq[k] - std::polar(1.0, traj.psi[k])));
      }
    }
  });
  const double w = *std::max_element(worst.begin(), worst.end());
  return {w < 1e-9, "max |B_k - exp(i psi_k)| = " + g4(w) + " (limit 1e-9)"};
}

std::size_t brute_count(const std::vector<double>& pts, double lo, double hi) {
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [&](double x) { return lo < x && x <= hi; }));
}

Outcome counting_equivalence(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 4);
  constexpr std::size_t paths = 500;
  std::vector<std::size_t> mismatches(2 * paths, 0);
  parallel_for(2 * paths, o.workers, [&](std::size_t job) {
    auto rng = RandomStream::for_trial(seed, job);
    const std::size_t n = 1 + job % 100;
    const double beta = 0.25 + 4.0 * rng.uniform();
    if (job < paths) {
      const EnsembleSpec spec{EnsembleKind::circular, n, beta};
      const auto path = draw_path(spec, rng);
      const auto pts = points_from_path(spec, path).points;
      for (int i = 0; i < 20; ++i) {
        double lo = -kPi + 2 * kPi * rng.uniform();
        double hi = -kPi + 2 * kPi * rng.uniform();
        if (lo > hi) std::swap(lo, hi);
        if (lo == hi) continue;
        mismatches[job] += count_in_arc(path, n, lo, hi).count != brute_count(pts, lo, hi);
      }
    } else {
      const EnsembleSpec spec{EnsembleKind::jacobi, n, beta, 0.2 + 3 * rng.uniform(),
                              0.2 + 3 * rng.uniform()};
      const auto path = draw_path(spec, rng);
      const auto pts = points_from_path(spec, path).points;
      for (int i = 0; i < 20; ++i) {
        const double theta = kPi * rng.uniform();
        const double lo = 2 * std::cos(theta);
        const auto c = static_cast<std::size_t>(
            std::count_if(pts.begin(), pts.end(), [&](double x) { return lo <= x; }));
        mismatches[job] += count_jacobi(path, n, theta).count != c;
      }
    }
  });
  std::size_t total = 0;
  for (auto m : mismatches) total += m;
  return {total == 0, std::to_string(total) + " mismatches over 2 x 500 paths x 20 intervals"};
}

Outcome partition_function(const VerifyOptions&) {
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    const auto p = partition_check(beta);
    worst = std::max(worst, std::abs(p.quadrature - p.closed_form) / p.closed_form);
  }
  return {worst < 1e-8, "max relative error " + g4(worst) + " (limit 1e-8)"};
}

Outcome two_point_law(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 6);
  constexpr std::size_t trials = 100000;
  constexpr std::size_t bins = 40;
  std::string detail;
  bool ok = true;
  std::size_t index = 0;
  for (double beta : {1.0, 2.0, 4.0}) {
    const EnsembleSpec spec{EnsembleKind::circular, 2, beta};
    std::vector<std::size_t> bin_of(trials);
    const std::uint64_t s = mix64(seed, index++);
    parallel_for(trials, o.workers, [&](std::size_t i) {
      auto rng = RandomStream::for_trial(s, i);
      const auto pts = sample_points(spec, rng).points;
      // Geodesic distance between the two points.
      const double raw = pts[1] - pts[0];
      const double gap = std::min(raw, 2 * kPi - raw);
      bin_of[i] = std::min<std::size_t>(bins - 1, static_cast<std::size_t>(gap / kPi * bins));
    });
    std::vector<std::size_t> observed(bins, 0);
    for (auto b : bin_of) ++observed[b];
    const auto density = [beta](double g) { return std::pow(2.0 * std::sin(g / 2.0), beta); };
    const double total = integrate_adaptive(density, 0.0, kPi, 1e-12).value;
    std::vector<double> probs(bins);
    for (std::size_t b = 0; b < bins; ++b) {
      const double lo = kPi * b / bins;
      const double hi = kPi * (b + 1) / bins;
      probs[b] = integrate_adaptive(density, lo, hi, 1e-10).value / total;
    }
    const auto chi = chi_square_goodness(observed, probs);
    ok = ok && chi.p > 1e-3;
    detail += "beta=" + g4(beta) + " p=" + g4(chi.p) + " (dof " + std::to_string(chi.dof) + ") ";
  }
  return {ok, detail + "(limit p > 0.001)"};
}

Outcome variance_growth(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 7);
  const std::size_t grid[] = {1u << 8, 1u << 10, 1u << 12, 1u << 14};
  const double thetas[] = {0.0, kPi / 2};
  bool ok = true;
  std::string detail;
  std::size_t index = 0;
  for (double beta : {1.0, 2.0}) {
    std::vector<double> x, y;
    for (auto n : grid) {
      const EnsembleSpec spec{EnsembleKind::circular, n, beta};
      const auto s = run_fluctuation_experiment(spec, thetas, 4000, mix64(seed, index++),
                                                {Normalization::count, o.workers});
      Accumulator acc;
      for (std::size_t i = 0; i < s.trials; ++i) acc.add(static_cast<double>(s.count(i, 0)));
      const double m = acc.mean();
      const double var = (acc.sumsq - acc.count * m * m) / (acc.count - 1.0);
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(var);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i] / x.size();
      my += y[i] / y.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    const double target = 2.0 / (kPi * kPi * beta);
    const double rel = slope / target - 1.0;
    ok = ok && std::abs(rel) < 0.15;
    detail += "beta=" + g4(beta) + " slope=" + g4(slope) + " target=" + g4(target) + " (" +
              fmt("%+.1f%%", 100 * rel) + ") ";
  }
  return {ok, detail + "(limit 15%)"};
}

Outcome gaussianity(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 8);
  bool ok = true;
  std::string detail;
  const EnsembleSpec circ{EnsembleKind::circular, 1u << 14, 2.0};
  const EnsembleSpec jac{EnsembleKind::jacobi, 1u << 14, 2.0, 1.0, 1.0};
  const double circ_thetas[] = {0.0, kPi / 2};
  const double jac_thetas[] = {kPi / 2};
  std::size_t index = 0;
  for (const auto& [spec, thetas] :
       {std::pair{circ, std::span<const double>(circ_thetas)},
        std::pair{jac, std::span<const double>(jac_thetas)}}) {
    const auto r = summarize(run_fluctuation_experiment(spec, thetas, 4000, mix64(seed, index++),
                                                        {Normalization::count, o.workers}));
    const bool pass = std::abs(r.mean[0]) < 0.1 && std::abs(r.skewness[0]) < 0.2 &&
                      r.excess_kurtosis[0] > -0.5 && r.excess_kurtosis[0] < 0.5;
    ok = ok && pass;
    detail += (spec.kind == EnsembleKind::circular ? "circular" : "jacobi") +
              std::string(" mean=") + g4(r.mean[0]) + " skew=" + g4(r.skewness[0]) +
              " kurt=" + g4(r.excess_kurtosis[0]) + " ";
  }
  return {ok, detail + "(limits 0.1, 0.2, +-0.5)"};
}

Outcome covariance_structure(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 9);
  // Adjacent arcs (θ1,θ2] and (θ2,θ3] whose union spans most of the circle.
  const double circ_thetas[] = {-0.95 * kPi, 0.0, 0.95 * kPi};
  const EnsembleSpec circ{EnsembleKind::circular, 1u << 13, 2.0};
  const auto rc = summarize(run_fluctuation_experiment(circ, circ_thetas, 4000, mix64(seed, 0),
                                                       {Normalization::count, o.workers}));
  const double adjacent = rc.correlation(0, 2);
  const double jac_thetas[] = {kPi / 3, 2 * kPi / 3};
  const EnsembleSpec jac{EnsembleKind::jacobi, 1u << 13, 2.0, 1.0, 1.0};
  const auto rj = summarize(run_fluctuation_experiment(jac, jac_thetas, 4000, mix64(seed, 1),
                                                       {Normalization::count, o.workers}));
  const double distinct = rj.correlation(0, 1);
  return {adjacent > -1.0 && adjacent < -0.5 && std::abs(distinct) < 0.15,
          "circular adjacent-arc rho=" + g4(adjacent) + " (limit (-1,-0.5)); jacobi rho=" +
              g4(distinct) + " (limit 0.15)"};
}

Outcome hypothesis_trends(const VerifyOptions& o) {
  const std::uint64_t seed = mix64(o.seed, 10);
  const TraceOptions defaults;
  const double t1 = defaults.theta1;
  const double t2 = defaults.theta2;
  const EnsembleSpec circ{EnsembleKind::circular, 1u << 14, 2.0};

  std::vector<double> diag(1), cross(200), moment(1), approx(1000);
  {
    auto rng = RandomStream::for_trial(seed, 0);
    const auto path = draw_path(circ, rng);
    diag[0] = stability_statistic(path, t1, t1, circ);
    moment[0] = moment_statistic(path, t1, circ);
  }
  const std::uint64_t cross_seed = mix64(seed, 1);
  parallel_for(cross.size(), o.workers, [&](std::size_t i) {
    auto rng = RandomStream::for_trial(cross_seed, i);
    cross[i] = stability_statistic(draw_path(circ, rng), t1, t2, circ);
  });
  const std::uint64_t approx_seed = mix64(seed, 2);
  parallel_for(approx.size(), o.workers, [&](std::size_t i) {
    auto rng = RandomStream::for_trial(approx_seed, i);
    approx[i] = approx_statistic(draw_path(circ, rng), t1, circ).square_over_log;
  });
  const auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double target = 4.0 / circ.beta;
  const double cross_mean = mean(cross);
  const double approx_mean = mean(approx);

  const EnsembleSpec jac{EnsembleKind::jacobi, 1u << 12, 2.0, 1.0, 1.0};
  std::vector<double> jmoment(1000), japprox(1000), jdiag(1000);
  const std::uint64_t jac_seed = mix64(seed, 3);
  parallel_for(jmoment.size(), o.workers, [&](std::size_t i) {
    auto rng = RandomStream::for_trial(jac_seed, i);
    const auto path = draw_path(jac, rng);
    jmoment[i] = moment_statistic(path, t1, jac);
    japprox[i] = approx_statistic(path, t1, jac).abs_over_sqrt_log;
    jdiag[i] = stability_statistic(path, t1, t1, jac);
  });
  const double jm = mean(jmoment);
  const double ja = mean(japprox);

  const bool circ_ok = std::abs(diag[0] / target - 1.0) < 0.1 && std::abs(cross_mean) < 0.15 &&
                       moment[0] < 0.05 && approx_mean < 0.1;
  const bool jac_ok = jm < 0.1 && ja < 0.3;
  std::string detail = "circular: diag=" + g4(diag[0]) + " (4/beta=" + g4(target) +
                       ", 10%) cross=" + g4(cross_mean) + " (0.15) moment=" + g4(moment[0]) +
                       " (0.05) approx=" + g4(approx_mean) + " (0.1); jacobi: moment=" + g4(jm) +
                       " (0.1) approx=" + g4(ja) + " (0.3) diag=" + g4(mean(jdiag)) +
                       " (reported)";
  return {circ_ok && jac_ok, detail};
}

Outcome sum_inequality(const VerifyOptions& o) {
  RandomStream rng(mix64(o.seed, 11));
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t len = 1 + static_cast<std::size_t>(rng.uniform() * 300);
    std::vector<double> eps(len), ys(len);
    const double scale = std::pow(10.0, 4 * rng.uniform() - 2);
    for (auto& e : eps) e = scale * (2 * rng.uniform() - 1);
    const double yscale = rng.uniform();
    for (auto& y : ys) y = yscale * (2 * rng.uniform() - 1);
    const double delta = 2 * kPi * rng.uniform();
    violations += !sum_bound_check(eps, 2 * kPi * rng.uniform(), delta, ys).ok;
  }
  return {violations == 0, std::to_string(violations) + " violations over 10000 instances"};
}

Outcome reproducibility(const VerifyOptions& o) {
  using cli::RunConfig;
  std::vector<RunConfig> configs;
  RunConfig circ;
  circ.subcommand = cli::Subcommand::fluctuations;
  circ.n = 512;
  circ.trials = 300;
  circ.thetas = {-1.0, 0.0, 1.5708};
  circ.seed = mix64(o.seed, 12);
  configs.push_back(circ);
  RunConfig jac = circ;
  jac.ensemble = EnsembleKind::jacobi;
  jac.beta = 1.0;
  jac.b = 2.0;
  jac.thetas = {0.5, 2.0};
  configs.push_back(jac);
  RunConfig cnt = circ;
  cnt.subcommand = cli::Subcommand::count;
  configs.push_back(cnt);
  RunConfig smp = jac;
  smp.subcommand = cli::Subcommand::sample;
  smp.n = 20;
  smp.trials = 40;
  configs.push_back(smp);

  std::size_t compared = 0;
  std::size_t differing = 0;
  for (auto config : configs) {
    for (auto format : {cli::OutputFormat::csv, cli::OutputFormat::json}) {
      config.format = format;
      std::string reference;
      for (std::size_t workers : {1u, 2u, 8u}) {
        config.parallel = workers;
        std::ostringstream out;
        cli::execute(config, out);
        std::string text = out.str();
        if (format == cli::OutputFormat::json) {
          // The provenance timestamp is the only field allowed to differ.
          auto doc = nlohmann::json::parse(text);
          doc.erase("provenance");
          text = doc.dump();
        }
        if (workers == 1) {
          reference = text;
        } else {
          ++compared;
          differing += text != reference;
        }
      }
    }
  }
  return {differing == 0, std::to_string(differing) + " of " + std::to_string(compared) +
                              " outputs differ from the 1-worker run (CSV byte-exact, JSON without timestamp)"};
}

// Extended property checks.

Outcome endpoint_structure(const VerifyOptions& o) {
  const EnsembleSpec spec{EnsembleKind::circular, 1u << 14, 2.0};
  const double thetas[] = {-kPi / 2, -kPi / 2 + 0.5, kPi / 2 + 0.5};
  const auto r = summarize(run_fluctuation_experiment(spec, thetas, 4000, mix64(o.seed, 101),
                                                      {Normalization::count, o.workers}));
  const double unit = r.limit_variance / 2;
  const double adjacent = r.cov(0, 2) / unit;
  const double nested = r.cov(0, 1) / unit;
  return {adjacent < 0 && nested > 0 && std::abs(adjacent + 1) < 0.25 && std::abs(nested - 1) < 0.25,
          "adjacent cov=" + g4(adjacent) + " (-1) nested cov=" + g4(nested) + " (+1), limit 0.25"};
}

Outcome jacobi_centering(const VerifyOptions& o) {
  const EnsembleSpec spec{EnsembleKind::jacobi, 256, 2.0, 1.0, 1.0};
  const double thetas[] = {kPi / 2};
  const auto s = run_fluctuation_experiment(spec, thetas, 4000, mix64(o.seed, 102),
                                            {Normalization::count, o.workers});
  Accumulator acc;
  for (std::size_t i = 0; i < s.trials; ++i) acc.add(static_cast<double>(s.count(i, 0)));
  const double z = acc.z(128.0);
  return {z < 4.0, "mean count " + g4(acc.mean()) + " vs n*theta/pi = 128, " + g4(z) + " SE"};
}

Outcome martingale_mean(const VerifyOptions& o) {
  bool ok = true;
  std::string detail;
  std::size_t index = 0;
  for (auto kind : {EnsembleKind::circular, EnsembleKind::jacobi}) {
    const EnsembleSpec spec{kind, 1024, 2.0, 1.0, 1.0};
    constexpr std::size_t trials = 10000;
    const std::size_t grid[] = {1, 16, 256, spec.path_length()};
    std::vector<std::array<double, 4>> at(trials);
    const std::uint64_t seed = mix64(mix64(o.seed, 103), index++);
    parallel_for(trials, o.workers, [&](std::size_t i) {
      auto rng = RandomStream::for_trial(seed, i);
      const auto path = draw_path(spec, rng);
      const auto s = martingale_sum(evolve_phase(1.0, path, true), path, spec);
      for (int g = 0; g < 4; ++g) at[i][g] = s[grid[g] - 1];
    });
    double worst = 0.0;
    for (int g = 0; g < 4; ++g) {
      Accumulator acc;
      for (const auto& row : at) acc.add(row[g]);
      worst = std::max(worst, acc.z(0.0));
    }
    ok = ok && worst < 4.0;
    detail += std::string(kind == EnsembleKind::circular ? "circular" : "jacobi") + " max " +
              g4(worst) + " SE ";
  }
  return {ok, detail + "(limit 4)"};
}

Outcome jacobi_decay(const VerifyOptions& o) {
  RandomStream rng(mix64(o.seed, 104));
  const double psi = 0.7;
  double worst = 0.0;
  std::vector<double> lk, lr;
  for (std::size_t k : {10u, 50u, 250u, 1250u, 6250u}) {
    const auto law = jacobi_coefficient_law(2.0, 1.0, 1.0, k);
    Accumulator first, rem;
    for (int i = 0; i < 200000; ++i) {
      const double a = sample_sym_beta(law, rng);
      const double u = upsilon(psi, a);
      first.add(std::abs(u));
      rem.add(std::abs(u - 2 * a * std::sin(psi) - a * a * std::sin(2 * psi)));
    }
    worst = std::max(worst, first.mean() * std::sqrt(k + 1.0));
    lk.push_back(std::log(k + 1.0));
    lr.push_back(std::log(rem.mean()));
  }
  const double slope = (lr.back() - lr.front()) / (lk.back() - lk.front());
  return {worst < kJacobiFirstMomentConstant && slope < -1.0,
          "max E|Y|*sqrt(k+1)=" + g4(worst) + " (constant 1.5); remainder decay exponent " +
              g4(slope) + " (summable when < -1)"};
}

Outcome rotation_invariance(const VerifyOptions& o) {
  const EnsembleSpec spec{EnsembleKind::circular, 64, 2.0};
  const double thetas[] = {-2.5, -1.6, 0.7, 1.6};
  const auto s = run_fluctuation_experiment(spec, thetas, 20000, mix64(o.seed, 105),
                                            {Normalization::count, o.workers});
  // Columns (θ0,θ1] and (θ2,θ3] have equal length 0.9.
  std::vector<std::size_t> first(20, 0), second(20, 0);
  for (std::size_t i = 0; i < s.trials; ++i) {
    ++first[std::min<std::size_t>(19, s.count(i, 0))];
    ++second[std::min<std::size_t>(19, s.count(i, 5))];
  }
  const auto chi = chi_square_homogeneity(first, second);
  return {chi.p > 1e-3, "homogeneity p=" + g4(chi.p) + " (limit 0.001)"};
}

struct Criterion {
  const char* id;
  const char* name;
  double time_limit;
  Outcome (*fn)(const VerifyOptions&);
};

constexpr Criterion kAcceptance[] = {
    {"1", "moment identities", 30, moment_identities},
    {"2", "log-moment closed form", 5, appendix_check},
    {"3", "Blaschke phase identity", 10, phase_identity},
    {"4", "counting equivalence", 60, counting_equivalence},
    {"5", "two-point partition function", 5, partition_function},
    {"6", "two-point gap law", 60, two_point_law},
    {"7", "variance growth", 600, variance_growth},
    {"8", "gaussianity proxy", 300, gaussianity},
    {"9", "covariance structure", 300, covariance_structure},
    {"10", "martingale CLT hypotheses", 300, hypothesis_trends},
    {"11", "summation-by-parts inequality", 5, sum_inequality},
    {"12", "reproducibility across workers", 0, reproducibility},
};

constexpr Criterion kExtended[] = {
    {"x1", "endpoint covariance structure", 0, endpoint_structure},
    {"x2", "jacobi centering", 0, jacobi_centering},
    {"x3", "martingale mean zero", 0, martingale_mean},
    {"x4", "jacobi increment decay", 0, jacobi_decay},
    {"x5", "rotation invariance", 0, rotation_invariance},
};

CriterionResult evaluate(const Criterion& c, const VerifyOptions& o) {
  CriterionResult r{c.id, c.name, false, "", 0.0, c.time_limit};
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto out = c.fn(o);
    r.passed = out.passed;
    r.detail = out.detail;
  } catch (const std::exception& e) {
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.time_limit > 0 && r.seconds >= r.time_limit) {
    r.passed = false;
    r.detail += "; exceeded runtime limit";
  }
  return r;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  std::string line = (r.passed ? "PASS " : "FAIL ") + std::string("[") + r.id + "] " + r.name +
                     ": " + r.detail + " (" + fmt("%.1f", r.seconds) + " s";
  if (r.time_limit > 0) line += ", limit " + fmt("%.0f", r.time_limit) + " s";
  return line + ")";
}

std::vector<CriterionResult> run_suite(const VerifyOptions& options) {
  std::vector<CriterionResult> results;
  auto record = [&](const Criterion& c) {
    results.push_back(evaluate(c, options));
    if (options.on_result) options.on_result(results.back());
  };
  for (const auto& c : kAcceptance) record(c);
  if (options.extended) {
    for (const auto& c : kExtended) record(c);
  }
  return results;
}

}  // namespace betaens::verify
