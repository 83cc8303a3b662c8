#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "ncwigner/error.hpp"
#include "ncwigner/params.hpp"

namespace ncwigner {

/// Trajectory labels: the phase-space point at t = 0.
struct InitialData {
  double x = 0.0;
  double y = 0.0;
  double pi_x = 0.0;
  double pi_y = 0.0;
};

inline InitialData as_initial(const PhasePoint& p) { return {p.q1, p.q2, p.pi1, p.pi2}; }

namespace detail {

/// Phase freq*t with t reduced modulo the period 2 pi / freq first.
inline double reduced_phase(double freq, double t) {
  if (freq == 0.0) return 0.0;
  const double period = 2.0 * std::numbers::pi / freq;
  return freq * std::remainder(t, period);
}

}  // namespace detail

/// Closed-form solution of the coupled equations of motion.
inline PhasePoint evolve(const DerivedParams& p, const InitialData& in, double t) {
  const double wt = detail::reduced_phase(p.Omega, t);
  const double gt = detail::reduced_phase(p.gamma, t);
  const double cw = std::cos(wt), sw = std::sin(wt);
  const double cg = std::cos(gt), sg = std::sin(gt);
  const double ba = p.beta / p.alpha, ab = p.alpha / p.beta;

  PhasePoint out;
  out.q1 = cw * (in.x * cg + in.y * sg) + ba * sw * (in.pi_y * sg + in.pi_x * cg);
  out.q2 = cw * (in.y * cg - in.x * sg) - ba * sw * (in.pi_x * sg - in.pi_y * cg);
  out.pi1 = cw * (in.pi_x * cg + in.pi_y * sg) - ab * sw * (in.y * sg + in.x * cg);
  out.pi2 = cw * (in.pi_y * cg - in.pi_x * sg) + ab * sw * (in.x * sg - in.y * cg);
  return out;
}

struct Invariants {
  double xi2 = 0.0;  ///< (alpha/beta) Q^2 + (beta/alpha) Pi^2
  double L = 0.0;    ///< Q1 Pi2 - Q2 Pi1
};

inline Invariants invariants(const DerivedParams& p, const PhasePoint& x) {
  const double ab = p.alpha / p.beta;
  return {ab * (x.q1 * x.q1 + x.q2 * x.q2) + (x.pi1 * x.pi1 + x.pi2 * x.pi2) / ab,
          x.q1 * x.pi2 - x.q2 * x.pi1};
}

/// Right-hand side of the first-order equations of motion.
inline PhasePoint equations_of_motion(const DerivedParams& p, const PhasePoint& x) {
  const double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta, g = p.gamma;
  PhasePoint d;
  d.q1 = 2.0 * b2 * x.pi1 + g * x.q2;
  d.q2 = 2.0 * b2 * x.pi2 - g * x.q1;
  d.pi1 = -2.0 * a2 * x.q1 + g * x.pi2;
  d.pi2 = -2.0 * a2 * x.q2 - g * x.pi1;
  return d;
}

/// Max-norm mismatch between a central difference of evolve() and the equations of motion.
inline double ode_residual(const DerivedParams& p, const InitialData& in, double t, double h) {
  if (!(h > 0.0)) throw NumericError("ode_residual: step h must be positive");
  const PhasePoint fwd = evolve(p, in, t + h);
  const PhasePoint bwd = evolve(p, in, t - h);
  const PhasePoint rhs = equations_of_motion(p, evolve(p, in, t));
  const double inv2h = 1.0 / (2.0 * h);
  return std::max({std::abs((fwd.q1 - bwd.q1) * inv2h - rhs.q1),
                   std::abs((fwd.q2 - bwd.q2) * inv2h - rhs.q2),
                   std::abs((fwd.pi1 - bwd.pi1) * inv2h - rhs.pi1),
                   std::abs((fwd.pi2 - bwd.pi2) * inv2h - rhs.pi2)});
}

/**
 * @brief Period of the closed phase-space orbit, if the beat ratio is rational.
 *
 * The solution is a plane rotation by gamma t composed with per-plane
 * rotations by Omega t; both equal -1 at half turns. With beat ratio p/q in
 * lowest terms the orbit closes after q pi / Omega when p + q is even and
 * after 2 q pi / Omega otherwise.
 *
 * Candidates are the continued-fraction convergents p/q with q <= max_den; a
 * candidate is accepted when the phase gap 2 pi |q epsilon - p| accumulated
 * over q half-turns is at most tol. Returns 2 pi / Omega when gamma = 0.
 */
inline std::optional<double> orbit_closure(const DerivedParams& p, double tol, long max_den) {
  const double eps = p.beat_ratio;
  const double pi = std::numbers::pi;
  if (eps == 0.0) return 2.0 * pi / p.Omega;

  long h_prev = 1, h_prev2 = 0;  // numerators
  long k_prev = 0, k_prev2 = 1;  // denominators
  double x = eps;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long h = ai * h_prev + h_prev2;
    const long k = ai * k_prev + k_prev2;
    if (k > max_den) break;
    if (k > 0) {
      const double gap = 2.0 * pi * std::abs(static_cast<double>(k) * eps - static_cast<double>(h));
      if (gap <= tol) {
        const bool even = (h + k) % 2 == 0;
        return (even ? 1.0 : 2.0) * static_cast<double>(k) * pi / p.Omega;
      }
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
    if (!std::isfinite(x) || x > 1e15) break;
  }
  return std::nullopt;
}

}  // namespace ncwigner
