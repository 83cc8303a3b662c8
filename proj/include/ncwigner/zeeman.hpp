#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>

#include "ncwigner/error.hpp"
#include "ncwigner/params.hpp"
#include "ncwigner/special.hpp"
#include "ncwigner/wigner.hpp"

namespace ncwigner {

/// Cylindrical quantum numbers: radial node count kappa and angular momentum ell (units of hbar).
struct RadialModes {
  int kappa = 0;
  int ell = 0;
};

inline void validate(const RadialModes& rm) {
  if (rm.kappa < 0) throw UsageError("kappa must be non-negative");
}

/// E = 2 hbar alpha beta (2 kappa + |ell| + 1) - hbar gamma ell.
inline double zeeman_energy(const DerivedParams& p, const RadialModes& rm) {
  validate(rm);
  const int shell = 2 * rm.kappa + std::abs(rm.ell);
  return p.hbar() * (p.Omega * (shell + 1) - p.gamma * rm.ell);
}

/// (n1, n2) -> (kappa, ell) with 2 kappa + |ell| = n1 + n2 and ell = n2 - n1.
inline RadialModes mode_map(const ModeIndex& m) {
  if (m.n1 < 0 || m.n2 < 0) throw UsageError("mode indices must be non-negative");
  return {std::min(m.n1, m.n2), m.n2 - m.n1};
}

inline ModeIndex mode_unmap(const RadialModes& rm) {
  validate(rm);
  const int shell = 2 * rm.kappa + std::abs(rm.ell);
  return {(shell - rm.ell) / 2, (shell + rm.ell) / 2};
}

/**
 * @brief Levels of the free particle with momentum noncommutativity only:
 * (eta / 2m)(2 kappa + |ell| - ell + 1).
 *
 * Here ell labels the angular factor exp(-i ell phi); with exp(+i ell phi)
 * the same levels read (eta / 2m)(2 kappa + |ell| + ell + 1).
 */
inline double free_eta_energy(const OscillatorConfig& c, const RadialModes& rm) {
  validate(rm);
  return c.eta / (2.0 * c.mass) * (2 * rm.kappa + std::abs(rm.ell) - rm.ell + 1);
}

namespace detail {

/// Dimensionless radial variable s = (alpha / hbar beta) R^2.
inline double radial_s(const DerivedParams& p, double R) {
  return p.alpha_over_beta() / p.hbar() * R * R;
}

/// Real radial factor f(R) of the normalized eigenfunction.
inline double radial_factor(const DerivedParams& p, const RadialModes& rm, double R) {
  const int al = std::abs(rm.ell);
  const double area = p.hbar() / p.alpha_over_beta();  // hbar beta / alpha
  const double norm = std::sqrt(std::exp(std::lgamma(rm.kappa + 1.0) - std::lgamma(rm.kappa + al + 1.0)) /
                                (std::numbers::pi * area));
  const double s = radial_s(p, R);
  return norm * std::pow(s, 0.5 * al) * std::exp(-0.5 * s) * laguerre(al, rm.kappa, s);
}

}  // namespace detail

/**
 * @brief Normalized eigenfunction of the oscillator in cylindrical coordinates,
 *   c s^{|ell|/2} exp(-s/2) L^{|ell|}_kappa(s) exp(i ell phi), s = (alpha / hbar beta) R^2,
 * with c = sqrt(kappa! / (pi (hbar beta / alpha) (kappa + |ell|)!)) so that
 * int |psi|^2 R dR dphi = 1. Its energy is zeeman_energy(p, rm).
 */
inline std::complex<double> radial_eigenfunction(const DerivedParams& p, const RadialModes& rm,
                                                 double R, double phi) {
  validate(rm);
  if (R < 0.0) throw UsageError("radius must be non-negative");
  return detail::radial_factor(p, rm, R) * std::polar(1.0, rm.ell * phi);
}

/**
 * @brief Relative residual ||(H - E) f|| / ||f|| of the radial equation
 *   -hbar^2 beta^2 (f'' + f'/R - ell^2 f/R^2) + alpha^2 R^2 f - hbar gamma ell f = E f,
 * with derivatives by central differences of step h.
 *
 * Norms use the measure R dR on the nodes R = j h, j >= 1, out to `extent`
 * length scales; the residual decreases as h^2.
 */
inline double radial_residual(const DerivedParams& p, const RadialModes& rm, double h,
                              double extent = 10.0) {
  validate(rm);
  if (!(h > 0.0)) throw NumericError("radial_residual: step h must be positive");
  const double E = zeeman_energy(p, rm);
  const double hb = p.hbar();
  const double b2 = p.beta * p.beta, a2 = p.alpha * p.alpha;
  const double l2 = static_cast<double>(rm.ell) * rm.ell;
  const double rmax = extent * p.length_scale();
  KahanSum res, ref;
  for (int j = 1; j * h <= rmax; ++j) {
    const double R = j * h;
    const double f0 = detail::radial_factor(p, rm, R);
    const double fp = detail::radial_factor(p, rm, R + h);
    const double fm = detail::radial_factor(p, rm, R - h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double d1 = (fp - fm) / (2.0 * h);
    const double Hf = -hb * hb * b2 * (d2 + d1 / R - l2 * f0 / (R * R)) + a2 * R * R * f0 -
                      hb * p.gamma * rm.ell * f0;
    const double r = Hf - E * f0;
    res.add(r * r * R);
    ref.add(f0 * f0 * R);
  }
  return std::sqrt(res.value() / ref.value());
}

}  // namespace ncwigner
