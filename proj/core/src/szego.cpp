#include "betaens/szego.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "betaens/error.hpp"

namespace betaens {
namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_degree(const VerblunskyPath& path, std::size_t k) {
  if (k > path.size()) {
    throw ParameterError("polynomial degree " + std::to_string(k) +
                         " exceeds path length " + std::to_string(path.size()));
  }
}

void check_on_circle(cplx z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw ParameterError("Blaschke evaluation requires |z| = 1");
  }
}

// One Szegő step in place.
inline void szego_step(cplx alpha, cplx z, cplx& phi, cplx& phi_star) {
  const cplx zphi = z * phi;
  const cplx next_phi = zphi - std::conj(alpha) * phi_star;
  phi_star = phi_star - alpha * zphi;
  phi = next_phi;
}

// Only the ratio Φ/Φ* is needed downstream; rescale when the moduli drift
// apart or leave a comfortable exponent range.
inline void renormalize(cplx& phi, cplx& phi_star) {
  const double a = std::abs(phi_star);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw NumericalError("reversed polynomial degenerated (|Phi*| = " + std::to_string(a) + ")");
  }
  const double drift = std::abs(std::abs(phi) - a) / a;
  if (drift > 1e-6 || a > 0x1.0p+200 || a < 0x1.0p-200) {
    phi /= a;
    phi_star /= a;
  }
}

}  // namespace

PolyPair eval_polys(const VerblunskyPath& path, cplx z, std::size_t k) {
  check_degree(path, k);
  cplx phi{1.0, 0.0};
  cplx phi_star{1.0, 0.0};
  for (std::size_t j = 0; j < k; ++j) szego_step(path.alphas[j], z, phi, phi_star);
  return {phi, phi_star, k};
}

std::vector<cplx> blaschke_sequence(const VerblunskyPath& path, cplx z, std::size_t k) {
  check_degree(path, k);
  check_on_circle(z);
  std::vector<cplx> out;
  out.reserve(k + 1);
  cplx phi{1.0, 0.0};
  cplx phi_star{1.0, 0.0};
  out.push_back(z);
  for (std::size_t j = 0; j < k; ++j) {
    szego_step(path.alphas[j], z, phi, phi_star);
    renormalize(phi, phi_star);
    out.push_back(z * phi / phi_star);
  }
  return out;
}

cplx blaschke(const VerblunskyPath& path, cplx z, std::size_t k) {
  return blaschke_sequence(path, z, k).back();
}

double polynomial_phase(const VerblunskyPath& path, double theta, std::size_t k) {
  check_degree(path, k);
  const cplx z = std::polar(1.0, theta);
  cplx phi{1.0, 0.0};
  cplx phi_star{1.0, 0.0};
  double arg_phi_star = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const cplx previous = phi_star;
    szego_step(path.alphas[j], z, phi, phi_star);
    arg_phi_star += std::arg(phi_star / previous);
    renormalize(phi, phi_star);
  }
  return static_cast<double>(k + 1) * theta - 2.0 * arg_phi_star;
}

std::vector<double> find_points_in(const VerblunskyPath& path, double target_phase,
                                   std::size_t degree_index, double lo, double hi) {
  check_degree(path, degree_index);
  detail::require(lo < hi, "root window must satisfy lo < hi");
  const auto phase = [&](double theta) {
    return polynomial_phase(path, theta, degree_index);
  };

  const std::size_t cells = 4 * (degree_index + 1);
  const double width = (hi - lo) / static_cast<double>(cells);
  std::vector<double> roots;
  roots.reserve(degree_index + 1);

  double left = lo;
  double f_left = phase(left);
  for (std::size_t i = 0; i < cells; ++i) {
    const double right = (i + 1 == cells) ? hi : lo + width * static_cast<double>(i + 1);
    const double f_right = phase(right);
    // Targets 2πm − target in (f_left, f_right].
    const auto m_first = static_cast<long long>(std::floor((f_left + target_phase) / kTwoPi)) + 1;
    const auto m_last = static_cast<long long>(std::floor((f_right + target_phase) / kTwoPi));
    for (long long m = m_first; m <= m_last; ++m) {
      const double goal = kTwoPi * static_cast<double>(m) - target_phase;
      double a = left;
      double b = right;
      double mid = 0.5 * (a + b);
      for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (a + b);
        const double residual = phase(mid) - goal;
        if (residual < 0.0) {
          a = mid;
        } else {
          b = mid;
        }
        if (residual == 0.0 || b - a <= 4.0 * std::max(std::abs(mid), 1.0) * 0x1.0p-52) break;
      }
      roots.push_back(0.5 * (a + b));
    }
    left = right;
    f_left = f_right;
  }
  return roots;
}

std::vector<double> find_points(const VerblunskyPath& path, double target_phase,
                                std::size_t degree_index) {
  auto roots = find_points_in(path, target_phase, degree_index, -std::numbers::pi,
                              std::numbers::pi);
  if (roots.size() != degree_index + 1) {
    throw NumericalError("bracket failure: found " + std::to_string(roots.size()) +
                         " points, expected " + std::to_string(degree_index + 1));
  }
  // A root landing exactly on the seam would duplicate −π as π.
  for (auto& r : roots) {
    if (r >= std::numbers::pi) r -= kTwoPi;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace betaens
