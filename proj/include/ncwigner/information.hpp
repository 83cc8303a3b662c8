#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "ncwigner/params.hpp"
#include "ncwigner/parallel.hpp"
#include "ncwigner/special.hpp"
#include "ncwigner/wigner.hpp"

namespace ncwigner {

/// Linear entropies of the two planes, of the whole system, and their mutual information.
struct EntropyReport {
  double S1 = 0.0;
  double S2 = 0.0;
  double S12 = 0.0;
  double I12 = 0.0;
  double t = 0.0;
  CartesianModes modes;
};

/**
 * @brief Purity (2 pi hbar)^2 int rho^2 dQ dPi of a four-dimensional Wigner
 * function rho(PhasePoint).
 *
 * The integral runs in scaled coordinates; `frame` must match the Gaussian
 * envelope of rho^2 there (exp(-2 xi^2/hbar) for the stationary states).
 */
template <class F>
double purity4(const DerivedParams& p, F&& rho, const QuadratureRule& rule,
               const Frame4& frame = Frame4::isotropic(1.0 / std::numbers::sqrt2)) {
  const double hb = p.hbar();
  const double integral = integrate_4d(
      [&](double r1, double k1, double r2, double k2) {
        const double v = rho(from_scaled(p, ScaledPoint{r1, k1, r2, k2}));
        return v * v;
      },
      rule, frame);
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * hb * hb * hb * hb * integral;
}

namespace detail {

/// 2 pi int w~^2 dr dk for the reduced state of `plane`; w~ carries exp(-(r^2+k^2)).
inline double reduced_purity(const CartesianModes& c, const MixAngle& g, int plane,
                             const QuadratureRule& rule) {
  const int n = rule.order;
  const double scale = 1.0 / std::numbers::sqrt2;
  std::vector<double> rows(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t a) {
    KahanSum acc;
    const double r = scale * rule.nodes[a];
    for (int b = 0; b < n; ++b) {
      const double w = reduced_scaled(c, g, plane, r, scale * rule.nodes[b], rule);
      acc.add(rule.scaled_weights[b] * w * w);
    }
    rows[a] = rule.scaled_weights[a] * acc.value();
  });
  KahanSum total;
  for (double v : rows) total.add(v);
  return 2.0 * std::numbers::pi * scale * scale * total.value();
}

}  // namespace detail

/**
 * @brief Linear entropies of the evolved product state rho_{nx,ny}(t).
 *
 * S_i = 1 - 2 pi hbar Tr_i[rho~_i^2], S12 = 1 - (2 pi hbar)^2 Tr[rho^2],
 * I12 = S1 + S2 - S12. Gauss-Hermite integration is exact while the rule
 * order exceeds 2 (nx + ny).
 */
inline EntropyReport entropies(const DerivedParams& p, const CartesianModes& c, double t,
                               const QuadratureRule& rule) {
  const detail::MixAngle g = detail::mix_angle(p, t);
  EntropyReport rep;
  rep.t = t;
  rep.modes = c;
  rep.S1 = 1.0 - detail::reduced_purity(c, g, 1, rule);
  rep.S2 = 1.0 - detail::reduced_purity(c, g, 2, rule);
  const double full = integrate_4d(
      [&](double r1, double k1, double r2, double k2) {
        const double w = detail::product_scaled(c, ScaledPoint{r1, k1, r2, k2}, g);
        return w * w;
      },
      rule, Frame4::isotropic(1.0 / std::numbers::sqrt2));
  rep.S12 = 1.0 - 4.0 * std::numbers::pi * std::numbers::pi * full;
  rep.I12 = rep.S1 + rep.S2 - rep.S12;
  return rep;
}

/// omega_beat = 2 gamma.
inline double beat_frequency(const DerivedParams& p) { return 2.0 * p.gamma; }

/// tau_coh = pi / gamma; nullopt (unbounded) in the commutative limit gamma = 0.
inline std::optional<double> decoherence_time(const DerivedParams& p) {
  if (p.gamma == 0.0) return std::nullopt;
  return std::numbers::pi / p.gamma;
}

/**
 * @brief lambda_coh = hbar^2 omega / (4 pi eta), with eta = m^2 omega^2 theta and c = 1.
 * nullopt (unbounded) when eta = 0.
 */
inline std::optional<double> coherence_length(const OscillatorConfig& c) {
  if (c.eta == 0.0) return std::nullopt;
  return c.hbar * c.hbar * c.omega / (4.0 * std::numbers::pi * c.eta);
}

}  // namespace ncwigner
