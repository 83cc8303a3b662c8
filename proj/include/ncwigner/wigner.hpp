#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ncwigner/error.hpp"
#include "ncwigner/params.hpp"
#include "ncwigner/parallel.hpp"
#include "ncwigner/special.hpp"

namespace ncwigner {

/// Circular quantum numbers of a stargenfunction.
struct ModeIndex {
  int n1 = 0;
  int n2 = 0;
};

/// Quantum numbers of a product of one-dimensional modes along x and y.
struct CartesianModes {
  int nx = 0;
  int ny = 0;
};

/// Uniform N x N sampling of [-X, X]^2 in scaled units.
struct PhaseGrid {
  double extent = 6.0;
  int samples = 201;

  double spacing() const { return 2.0 * extent / (samples - 1); }
  double coord(int i) const { return -extent + i * spacing(); }
};

inline void validate(const PhaseGrid& g) {
  if (!(g.extent > 0.0)) throw GridCoverageError("grid extent X must be positive");
  if (g.samples < 2) throw GridCoverageError("grid needs at least 2 samples per axis");
}

/// Row-major field on a PhaseGrid; values[i * N + j] sits at (coord(i), coord(j)).
struct Field2D {
  PhaseGrid grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.samples + j]; }
};

namespace detail {

inline double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

/// Cosine and sine of the plane-mixing angle gamma t, reduced modulo its period pi / gamma.
struct MixAngle {
  double c = 1.0;
  double s = 0.0;
};

inline MixAngle mix_angle(const DerivedParams& p, double t) {
  if (p.gamma == 0.0) return {};
  const double gt = p.gamma * std::remainder(t, std::numbers::pi / p.gamma);
  return {std::cos(gt), std::sin(gt)};
}

}  // namespace detail

/**
 * @brief Stargenfunction rho_{n1,n2}(Q, Pi).
 *
 * (-1)^{n1+n2} / (pi hbar)^2 exp(-xi^2/hbar) L_{n1}(Omega_+/hbar) L_{n2}(Omega_-/hbar)
 * with Omega_(+/-) = xi^2 -/+ 2 L and L = Q1 Pi2 - Q2 Pi1. With this pairing the
 * state has angular momentum hbar (n2 - n1), consistent with energy() below.
 */
inline double stargen(const DerivedParams& p, const ModeIndex& m, const PhasePoint& x) {
  const ScaledPoint s = to_scaled(p, x);
  const double xi2 = s.xi2(), L = s.angular();
  const double hb = p.hbar();
  return detail::parity(m.n1 + m.n2) / (std::numbers::pi * std::numbers::pi * hb * hb) *
         std::exp(-xi2) * laguerre(0, m.n1, xi2 - 2.0 * L) * laguerre(0, m.n2, xi2 + 2.0 * L);
}

/// Stargenvalue hbar [Omega (n1 + n2 + 1) + gamma (n1 - n2)].
inline double energy(const DerivedParams& p, const ModeIndex& m) {
  return p.hbar() * (p.Omega * (m.n1 + m.n2 + 1) + p.gamma * (m.n1 - m.n2));
}

/// Equal-weight mixture of all stargenfunctions with n1 + n2 = n; depends on xi^2 only.
inline double superposition_n(const DerivedParams& p, int n, const PhasePoint& x) {
  const double xi2 = to_scaled(p, x).xi2();
  const double hb = p.hbar();
  return detail::parity(n) / ((n + 1.0) * std::numbers::pi * std::numbers::pi * hb * hb) *
         std::exp(-xi2) * laguerre(1, n, 2.0 * xi2);
}

/**
 * @brief One-dimensional oscillator Wigner function of quantum number n.
 * @param xi2_axis (alpha/beta) Q^2 + (beta/alpha) Pi^2 for that axis [action].
 */
inline double cartesian_mode(const DerivedParams& p, int n, double xi2_axis) {
  const double hb = p.hbar();
  const double u = xi2_axis / hb;
  return detail::parity(n) / (std::numbers::pi * hb) * std::exp(-u) * laguerre(0, n, 2.0 * u);
}

struct XiSplit {
  double xi2_x = 0.0;
  double xi2_y = 0.0;
};

/**
 * @brief Per-axis quadratics of the initial point that evolves into x at time t.
 *
 * The per-plane Omega rotation leaves both plane norms and their cross
 * product invariant, so only the gamma rotation mixing the planes survives.
 */
inline XiSplit xi_split(const DerivedParams& p, const PhasePoint& x, double t) {
  const double ab = p.alpha_over_beta();
  const double a = ab * x.q1 * x.q1 + x.pi1 * x.pi1 / ab;
  const double b = ab * x.q2 * x.q2 + x.pi2 * x.pi2 / ab;
  const double cross = ab * x.q1 * x.q2 + x.pi1 * x.pi2 / ab;
  const auto [c, s] = detail::mix_angle(p, t);
  const double s2 = 2.0 * s * c;
  return {a * c * c + b * s * s - cross * s2, a * s * s + b * c * c + cross * s2};
}

namespace detail {

/// hbar^2 times the product state at a scaled point.
inline double product_scaled(const CartesianModes& m, const ScaledPoint& s, const MixAngle& g) {
  const double a = s.r1 * s.r1 + s.k1 * s.k1;
  const double b = s.r2 * s.r2 + s.k2 * s.k2;
  const double cross = s.r1 * s.r2 + s.k1 * s.k2;
  const double s2 = 2.0 * g.s * g.c;
  const double ux = a * g.c * g.c + b * g.s * g.s - cross * s2;
  const double uy = a * g.s * g.s + b * g.c * g.c + cross * s2;
  return parity(m.nx + m.ny) / (std::numbers::pi * std::numbers::pi) * std::exp(-(a + b)) *
         laguerre(0, m.nx, 2.0 * ux) * laguerre(0, m.ny, 2.0 * uy);
}

}  // namespace detail

/// Product state rho_{nx}(xi_x^2(t)) rho_{ny}(xi_y^2(t)).
inline double product_state(const DerivedParams& p, const CartesianModes& c, const PhasePoint& x,
                            double t) {
  const XiSplit s = xi_split(p, x, t);
  return cartesian_mode(p, c.nx, s.xi2_x) * cartesian_mode(p, c.ny, s.xi2_y);
}

namespace detail {

/// Point with plane `plane` set to (r, k) and the other plane to (u, v), scaled units.
inline ScaledPoint place(int plane, double r, double k, double u, double v) {
  return plane == 1 ? ScaledPoint{r, k, u, v} : ScaledPoint{u, v, r, k};
}

/**
 * Reduced state in scaled units: the product state integrated over the other
 * plane, which carries the exp(-(u^2+v^2)) envelope. Integrates to one over (r, k).
 */
inline double reduced_scaled(const CartesianModes& c, const MixAngle& g, int plane, double r,
                             double k, const QuadratureRule& rule) {
  return integrate_2d(
      [&](double u, double v) { return product_scaled(c, place(plane, r, k, u, v), g); }, rule);
}

}  // namespace detail

/**
 * @brief Traced-out Wigner function on plane 1 or 2, sampled on a grid of
 * scaled coordinates (r, k).
 *
 * Values are the physical rho~ (per unit Q Pi of the kept plane). Throws
 * GridCoverageError when the grid sum misses the unit normalization by more
 * than 1e-3.
 */
inline Field2D trace_out(const DerivedParams& p, const CartesianModes& c, double t, int plane,
                         const PhaseGrid& grid, const QuadratureRule& rule) {
  validate(grid);
  if (plane != 1 && plane != 2) throw UsageError("plane must be 1 or 2");
  const int n = grid.samples;
  Field2D out{grid, std::vector<double>(static_cast<std::size_t>(n) * n)};
  const double hb = p.hbar();
  const detail::MixAngle g = detail::mix_angle(p, t);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double r = grid.coord(static_cast<int>(i));
    for (int j = 0; j < n; ++j)
      out.values[i * n + j] = detail::reduced_scaled(c, g, plane, r, grid.coord(j), rule) / hb;
  });
  KahanSum norm;
  for (double v : out.values) norm.add(v);
  const double h = grid.spacing();
  const double total = norm.value() * h * h * hb;
  if (std::abs(total - 1.0) > 1e-3)
    throw GridCoverageError("grid does not cover the state: normalization " +
                            std::to_string(total) + " (increase --grid-x or --grid-n)");
  return out;
}

}  // namespace ncwigner
