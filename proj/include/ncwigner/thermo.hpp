#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ncwigner/error.hpp"
#include "ncwigner/optimize.hpp"
#include "ncwigner/parallel.hpp"
#include "ncwigner/params.hpp"
#include "ncwigner/special.hpp"
#include "ncwigner/wigner.hpp"

namespace ncwigner {

/// Inverse temperature sigma = hbar Omega / (k_B T) and beat ratio epsilon = gamma / Omega.
struct ThermoPoint {
  double sigma = 1.0;
  double beat_ratio = 0.0;
};

inline void validate(const ThermoPoint& tp) {
  if (!(tp.sigma > 0.0)) throw PhysicsError("sigma must be positive");
  if (!(tp.beat_ratio >= 0.0)) throw PhysicsError("beat ratio epsilon must be non-negative");
  if (!(tp.beat_ratio < 1.0)) throw PhysicsError("beat ratio epsilon must be below 1");
}

/// Z, U [hbar Omega], S_k [k_B], C_v [k_B].
struct ThermoReport {
  double Z = 0.0;
  double U = 0.0;
  double Sk = 0.0;
  double Cv = 0.0;
};

namespace detail {

/// Half Boltzmann exponents a = sigma(1+eps)/2 and b = sigma(1-eps)/2 of the two circular modes.
struct HalfExponents {
  double a = 0.0;
  double b = 0.0;
};

inline HalfExponents half_exponents(const ThermoPoint& tp) {
  return {0.5 * tp.sigma * (1.0 + tp.beat_ratio), 0.5 * tp.sigma * (1.0 - tp.beat_ratio)};
}

/// ln sinh x for x > 0 without overflow or cancellation.
inline double log_sinh(double x) {
  return x + std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2;
}

/// Gaussian coefficients of the thermal state: hbar^2 rho = norm exp(-A xi^2 + B L).
struct ThermalGaussian {
  double norm = 0.0;
  double A = 0.0;
  double B = 0.0;
};

inline ThermalGaussian thermal_gaussian(const ThermoPoint& tp) {
  const auto [a, b] = half_exponents(tp);
  const double t1 = std::tanh(a), t2 = std::tanh(b);
  return {t1 * t2 / (std::numbers::pi * std::numbers::pi), 0.5 * (t1 + t2), t1 - t2};
}

/// Precision matrix of (hbar^2 rho)^power over (r1, k1, r2, k2).
inline std::array<std::array<double, 4>, 4> thermal_precision(const ThermalGaussian& g,
                                                              double power) {
  std::array<std::array<double, 4>, 4> M{};
  for (int i = 0; i < 4; ++i) M[i][i] = power * g.A;
  M[0][3] = M[3][0] = -0.5 * power * g.B;  // r1 k2
  M[1][2] = M[2][1] = 0.5 * power * g.B;   // k1 r2
  return M;
}

}  // namespace detail

/**
 * @brief Thermalized Wigner function in scaled units (the value of hbar^2 rho_th).
 *
 * Closed form of the Boltzmann-weighted stargenfunction series,
 *   (cosh s - cosh es)/(cosh s + cosh es) / pi^2
 *     * exp(-(xi2 sinh s - 2 L sinh es) / (cosh s + cosh es)),
 * written with t_(1,2) = tanh(s (1 +/- e)/2), which stays finite for any sigma.
 * xi2 = sum(r^2 + k^2) and L = r1 k2 - r2 k1 (angular momentum over hbar).
 */
inline double thermal_wigner(const ThermoPoint& tp, double xi2, double L) {
  validate(tp);
  const auto g = detail::thermal_gaussian(tp);
  return g.norm * std::exp(-g.A * xi2 + g.B * L);
}

/// Physical thermalized Wigner function at a phase-space point.
inline double thermal_wigner(const DerivedParams& p, const ThermoPoint& tp, const PhasePoint& x) {
  const ScaledPoint s = to_scaled(p, x);
  return thermal_wigner(tp, s.xi2(), s.angular()) / (p.hbar() * p.hbar());
}

/// Z = 1 / (2 (cosh sigma - cosh eps sigma)) = 1 / (4 sinh a sinh b).
inline double partition(const ThermoPoint& tp) {
  validate(tp);
  const auto [a, b] = detail::half_exponents(tp);
  return 0.25 / (std::sinh(a) * std::sinh(b));
}

/**
 * @brief Internal energy, Boltzmann entropy and heat capacity from ln Z.
 *
 * ln Z = -ln 4 - ln sinh a - ln sinh b, so
 *   U/(hbar Omega) = -d ln Z/d sigma = (1+e)/2 coth a + (1-e)/2 coth b,
 *   S_k/k_B = ln Z + sigma U/(hbar Omega),
 *   C_v/k_B = sigma^2 d^2 ln Z/d sigma^2 = (a/sinh a)^2 + (b/sinh b)^2.
 */
inline ThermoReport thermo_report(const ThermoPoint& tp) {
  validate(tp);
  const auto [a, b] = detail::half_exponents(tp);
  const double e = tp.beat_ratio;
  const double lnZ = -2.0 * std::numbers::ln2 - detail::log_sinh(a) - detail::log_sinh(b);
  ThermoReport r;
  r.Z = std::exp(lnZ);
  r.U = 0.5 * (1.0 + e) / std::tanh(a) + 0.5 * (1.0 - e) / std::tanh(b);
  r.Sk = lnZ + tp.sigma * r.U;
  const double ca = a / std::sinh(a), cb = b / std::sinh(b);
  r.Cv = ca * ca + cb * cb;
  return r;
}

/// Heat capacity [k_B] written directly in cosh/sinh of sigma and eps*sigma.
inline double heat_capacity_hyperbolic(const ThermoPoint& tp) {
  validate(tp);
  const double s = tp.sigma, e = tp.beat_ratio;
  const double ch = std::cosh(s), che = std::cosh(e * s);
  const double sh = std::sinh(s), she = std::sinh(e * s);
  const double den = ch - che;
  return (s * s * (1.0 + e * e) * (ch * che - 1.0) - 2.0 * s * s * e * sh * she) / (den * den);
}

/**
 * @brief Position distribution P(r1, r2) = int rho_th dk1 dk2 in scaled units.
 *
 * For fixed (r1, r2) the integrand is a Gaussian in (k1, k2) centred at
 * (-B r2, B r1)/(2A) with precision A; the frame puts the rule on it.
 */
inline double position_distribution(const ThermoPoint& tp, double r1, double r2,
                                    const QuadratureRule& rule) {
  validate(tp);
  const auto g = detail::thermal_gaussian(tp);
  const auto frame = Frame2::isotropic(1.0 / std::sqrt(g.A),
                                       {-g.B * r2 / (2.0 * g.A), g.B * r1 / (2.0 * g.A)});
  return integrate_2d(
      [&](double k1, double k2) {
        const ScaledPoint s{r1, k1, r2, k2};
        return g.norm * std::exp(-g.A * s.xi2() + g.B * s.angular());
      },
      rule, frame);
}

/// P(sigma, eps; r1, r2) - P(sigma, 0; r1, r2) on the (r1, r2) grid.
inline Field2D distortion_map(const ThermoPoint& tp, const PhaseGrid& grid,
                              const QuadratureRule& rule) {
  validate(tp);
  validate(grid);
  const ThermoPoint ref{tp.sigma, 0.0};
  const int n = grid.samples;
  Field2D out{grid, std::vector<double>(static_cast<std::size_t>(n) * n)};
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double r1 = grid.coord(static_cast<int>(i));
    for (int j = 0; j < n; ++j) {
      const double r2 = grid.coord(j);
      out.values[i * n + j] =
          position_distribution(tp, r1, r2, rule) - position_distribution(ref, r1, r2, rule);
    }
  });
  return out;
}

struct ThermalEntropies {
  double S1 = 0.0;  ///< per plane; S2 = S1 by symmetry
  double S12 = 0.0;
  double I12 = 0.0;
};

/**
 * @brief Linear entropies of the thermal state by Gaussian-adapted quadrature.
 *
 * S12 integrates rho_th^2 over all four coordinates. S1 first traces out
 * plane 2 (a Gaussian in (r2, k2) shifted by the angular-momentum coupling),
 * then integrates the square of the reduced state, whose precision is the
 * Schur complement A - B^2/(4A).
 */
inline ThermalEntropies thermal_entropies(const ThermoPoint& tp, const QuadratureRule& rule) {
  validate(tp);
  const auto g = detail::thermal_gaussian(tp);
  const double pi = std::numbers::pi;
  auto w = [&](const ScaledPoint& s) { return g.norm * std::exp(-g.A * s.xi2() + g.B * s.angular()); };

  const auto frame4 = Frame4::from_precision(detail::thermal_precision(g, 2.0));
  const double full = integrate_4d(
      [&](double r1, double k1, double r2, double k2) {
        const double v = w({r1, k1, r2, k2});
        return v * v;
      },
      rule, frame4);

  auto reduced = [&](double r1, double k1) {
    const auto inner = Frame2::isotropic(1.0 / std::sqrt(g.A),
                                         {-g.B * k1 / (2.0 * g.A), g.B * r1 / (2.0 * g.A)});
    return integrate_2d([&](double r2, double k2) { return w({r1, k1, r2, k2}); }, rule, inner);
  };
  const double marginal_precision = g.A - g.B * g.B / (4.0 * g.A);
  const double red = integrate_2d(
      [&](double r1, double k1) {
        const double v = reduced(r1, k1);
        return v * v;
      },
      rule, Frame2::isotropic(1.0 / std::sqrt(2.0 * marginal_precision)));

  ThermalEntropies out;
  out.S12 = 1.0 - 4.0 * pi * pi * full;
  out.S1 = 1.0 - 2.0 * pi * red;
  out.I12 = 2.0 * out.S1 - out.S12;
  return out;
}

struct MissingInformation {
  double dS12 = 0.0;
  double dI12 = 0.0;
};

/// Entropy and mutual-information excess of the noncommutative thermal state over eps = 0.
inline MissingInformation missing_information(double sigma, double beat_ratio,
                                              const QuadratureRule& rule) {
  const auto nc = thermal_entropies({sigma, beat_ratio}, rule);
  const auto ref = thermal_entropies({sigma, 0.0}, rule);
  return {nc.S12 - ref.S12, nc.I12 - ref.I12};
}

enum class MissingInfoKind { entropy, mutual_information };

struct SigmaBracket {
  double lo = 1e-2;
  double hi = 20.0;
  double tol = 1e-4;
};

/// Temperature sigma at which the chosen missing-information measure peaks.
inline double sigma_max(double beat_ratio, MissingInfoKind which, const QuadratureRule& rule,
                        const SigmaBracket& bracket = {}) {
  if (!(beat_ratio < 1.0)) throw PhysicsError("beat ratio epsilon must be below 1");
  if (!(beat_ratio > 0.0))
    throw NumericError("missing information vanishes identically at epsilon = 0; no maximum");
  auto objective = [&](double s) {
    const auto mi = missing_information(s, beat_ratio, rule);
    return which == MissingInfoKind::entropy ? mi.dS12 : mi.dI12;
  };
  return golden_section_maximize(objective, bracket.lo, bracket.hi, bracket.tol).x;
}

}  // namespace ncwigner
