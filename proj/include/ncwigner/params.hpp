#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ncwigner/error.hpp"

namespace ncwigner {

/// Physical inputs of the planar oscillator. Defaults are natural units.
struct OscillatorConfig {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double theta = 0.0;  ///< position noncommutativity [length^2]
  double eta = 0.0;    ///< momentum noncommutativity [momentum^2]
};

/// Root of the constraint quadratic used for lambda*mu.
enum class LambdaBranch { upper, lower };

/**
 * @brief Constants derived from an OscillatorConfig through the planar
 * Seiberg-Witten map with lambda = mu.
 *
 * The commutative-variable Hamiltonian reads
 *   H = alpha^2 Q^2 + beta^2 Pi^2 - gamma (Q1 Pi2 - Q2 Pi1),
 * and Omega = 2 alpha beta is the common oscillation frequency.
 */
struct DerivedParams {
  OscillatorConfig config;
  double lambda = 1.0;
  double mu = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;        ///< noncommutative rotation frequency
  double Omega = 0.0;        ///< 2 alpha beta
  double nc_strength = 0.0;  ///< gamma / omega
  double beat_ratio = 0.0;   ///< gamma / Omega, in [0, 1)

  double hbar() const { return config.hbar; }
  double alpha_over_beta() const { return alpha / beta; }

  /// theta eta / (4 hbar^2) - lambda mu (1 - lambda mu); zero for a valid map.
  double constraint_residual() const {
    const auto& c = config;
    const double lm = lambda * mu;
    return c.theta * c.eta / (4.0 * c.hbar * c.hbar) - lm * (1.0 - lm);
  }

  /// Length unit sqrt(hbar beta / alpha) that maps Q to the scaled coordinate r.
  double length_scale() const { return std::sqrt(hbar() * beta / alpha); }
  /// Momentum unit sqrt(hbar alpha / beta) that maps Pi to the scaled coordinate k.
  double momentum_scale() const { return std::sqrt(hbar() * alpha / beta); }
};

inline void validate(const OscillatorConfig& c) {
  if (!(c.mass > 0.0)) throw PhysicsError("mass must be positive");
  if (!(c.omega > 0.0)) throw PhysicsError("omega must be positive");
  if (!(c.hbar > 0.0)) throw PhysicsError("hbar must be positive");
  if (!(c.theta >= 0.0)) throw PhysicsError("theta must be non-negative");
  if (!(c.eta >= 0.0)) throw PhysicsError("eta must be non-negative");
  if (!(c.theta * c.eta < c.hbar * c.hbar))
    throw PhysicsError("theta*eta must be strictly below hbar^2 (SW map not invertible)");
}

inline DerivedParams derive_params(const OscillatorConfig& c,
                                   LambdaBranch branch = LambdaBranch::upper) {
  validate(c);
  const double m = c.mass, w = c.omega, hb = c.hbar;
  const double root = std::sqrt(1.0 - c.theta * c.eta / (hb * hb));
  const double lm = branch == LambdaBranch::upper ? 0.5 * (1.0 + root) : 0.5 * (1.0 - root);
  if (!(lm > 0.0)) throw PhysicsError("lower lambda-mu branch requires theta*eta > 0");

  DerivedParams p;
  p.config = c;
  p.lambda = std::sqrt(lm);
  p.mu = p.lambda;
  const double l2 = p.lambda * p.lambda;
  const double m2 = p.mu * p.mu;
  const double alpha2 = l2 * m * w * w / 2.0 + c.eta * c.eta / (8.0 * m * m2 * hb * hb);
  const double beta2 = m2 / (2.0 * m) + m * w * w * c.theta * c.theta / (8.0 * l2 * hb * hb);
  p.alpha = std::sqrt(alpha2);
  p.beta = std::sqrt(beta2);
  p.gamma = c.theta * m * w * w / (2.0 * hb) + c.eta / (2.0 * m * hb);
  p.Omega = 2.0 * p.alpha * p.beta;
  p.nc_strength = (m * w * c.theta + c.eta / (m * w)) / (2.0 * hb);
  p.beat_ratio = p.gamma / p.Omega;
  return p;
}

/**
 * @brief Natural-unit configuration (m = omega = hbar = 1) with a prescribed
 * beat ratio.
 *
 * With theta = eta = e one gets Omega = 1 and gamma = e exactly, so the beat
 * ratio equals e.
 */
inline OscillatorConfig config_from_beat_ratio(double beat_ratio) {
  if (!(beat_ratio >= 0.0 && beat_ratio < 1.0))
    throw PhysicsError("beat ratio epsilon must lie in [0, 1)");
  OscillatorConfig c;
  c.theta = beat_ratio;
  c.eta = beat_ratio;
  return c;
}

/// Determinant of the Jacobian d(q,p)/d(Q,Pi) of the planar SW map.
inline double jacobian_det(const OscillatorConfig& c) {
  return 1.0 - c.theta * c.eta / (c.hbar * c.hbar);
}

/// Point (Q1, Pi1, Q2, Pi2) in the four-dimensional phase space.
struct PhasePoint {
  double q1 = 0.0;
  double pi1 = 0.0;
  double q2 = 0.0;
  double pi2 = 0.0;
};

/// The same point in units of length_scale / momentum_scale: (r1, k1, r2, k2).
struct ScaledPoint {
  double r1 = 0.0;
  double k1 = 0.0;
  double r2 = 0.0;
  double k2 = 0.0;

  double xi2() const { return r1 * r1 + k1 * k1 + r2 * r2 + k2 * k2; }
  /// Angular momentum (Q1 Pi2 - Q2 Pi1) / hbar.
  double angular() const { return r1 * k2 - r2 * k1; }
};

inline ScaledPoint to_scaled(const DerivedParams& p, const PhasePoint& x) {
  const double lq = p.length_scale(), lp = p.momentum_scale();
  return {x.q1 / lq, x.pi1 / lp, x.q2 / lq, x.pi2 / lp};
}

inline PhasePoint from_scaled(const DerivedParams& p, const ScaledPoint& s) {
  const double lq = p.length_scale(), lp = p.momentum_scale();
  return {s.r1 * lq, s.k1 * lp, s.r2 * lq, s.k2 * lp};
}

/// Commutative (Q, Pi) to noncommutative (q, p); epsilon_12 = +1.
inline PhasePoint sw_forward(const DerivedParams& p, const PhasePoint& x) {
  const auto& c = p.config;
  const double a = c.theta / (2.0 * p.lambda * c.hbar);
  const double b = c.eta / (2.0 * p.mu * c.hbar);
  return {p.lambda * x.q1 - a * x.pi2, p.mu * x.pi1 + b * x.q2,
          p.lambda * x.q2 + a * x.pi1, p.mu * x.pi2 - b * x.q1};
}

/// Noncommutative (q, p) back to commutative (Q, Pi).
inline PhasePoint sw_inverse(const DerivedParams& p, const PhasePoint& nc) {
  const auto& c = p.config;
  const double lm = p.lambda * p.mu;
  const double det = 2.0 * lm - 1.0;
  const double a = c.theta / (2.0 * lm * c.hbar);
  const double b = c.eta / (2.0 * lm * c.hbar);
  const double sq = p.mu / det, sp = p.lambda / det;
  return {sq * (nc.q1 + a * nc.pi2), sp * (nc.pi1 - b * nc.q2),
          sq * (nc.q2 - a * nc.pi1), sp * (nc.pi2 + b * nc.q1)};
}

/**
 * @brief Reads a key=value configuration (keys: m, omega, hbar, theta, eta).
 *
 * Blank lines and lines starting with '#' are ignored. Unknown keys are an error.
 */
inline OscillatorConfig parse_config(std::istream& in, OscillatorConfig base = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw UsageError("config line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "m") base.mass = v;
    else if (key == "omega") base.omega = v;
    else if (key == "hbar") base.hbar = v;
    else if (key == "theta") base.theta = v;
    else if (key == "eta") base.eta = v;
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return base;
}

inline OscillatorConfig load_config(const std::string& path, OscillatorConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return parse_config(in, base);
}

}  // namespace ncwigner
