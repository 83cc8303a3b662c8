#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ncwigner/dynamics.hpp"
#include "ncwigner/error.hpp"
#include "ncwigner/information.hpp"
#include "ncwigner/io.hpp"
#include "ncwigner/params.hpp"
#include "ncwigner/special.hpp"
#include "ncwigner/thermo.hpp"
#include "ncwigner/wigner.hpp"
#include "ncwigner/zeeman.hpp"

namespace ncwigner::cli {

struct GlobalOptions {
  OscillatorConfig config;
  double epsilon = 0.0;
  bool use_epsilon = false;
  std::string config_path;
  int quad_order = kDefaultQuadOrder;
  int grid_n = 201;
  double grid_x = 6.0;
  std::string out;
  bool verify = false;
};

struct TrajectoryOptions {
  InitialData start{1.0, 0.0, 0.0, 0.0};
  std::string tmax = "auto";
  int samples = 1001;
};

struct GridOptions {
  CartesianModes modes{1, 2};
  double t = 0.0;
  int plane = 1;
  int frames = 9;
  std::string format = "csv";
};

struct EntropyOptions {
  CartesianModes modes{1, 2};
  std::string tmax = "auto";
  int samples = 17;
};

struct ThermoOptions {
  double sigma_min = 0.1;
  double sigma_max = 10.0;
  int samples = 50;
  double sigma = 0.0;
  bool single = false;
  std::string spacing = "lin";
};

struct SigmaMaxOptions {
  SigmaBracket bracket;
};

struct ZeemanOptions {
  int levels = 10;
};

namespace detail {

inline DerivedParams resolve_params(const GlobalOptions& g, const CLI::App& app) {
  if (g.use_epsilon) return derive_params(config_from_beat_ratio(g.epsilon));
  OscillatorConfig c = g.config_path.empty() ? OscillatorConfig{} : load_config(g.config_path);
  auto set_if = [&](const char* name, double value, double& field) {
    if (app.count(name) > 0) field = value;
  };
  set_if("--m", g.config.mass, c.mass);
  set_if("--omega", g.config.omega, c.omega);
  set_if("--hbar", g.config.hbar, c.hbar);
  set_if("--theta", g.config.theta, c.theta);
  set_if("--eta", g.config.eta, c.eta);
  return derive_params(c);
}

inline double parse_time(const std::string& text, double fallback) {
  if (text == "auto") return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("time must be a number or 'auto', got '" + text + "'");
  }
}

inline PhaseGrid grid_of(const GlobalOptions& g) { return {g.grid_x, g.grid_n}; }

inline QuadratureRule rule_of(const GlobalOptions& g) {
  if (g.quad_order < 1) throw UsageError("--quad-order must be at least 1");
  return gauss_hermite(g.quad_order);
}

inline std::string matrix_header(const Field2D& f, double t, const CartesianModes& m, int plane) {
  return std::to_string(f.grid.samples) + ' ' + io::format(f.grid.extent) + ' ' + io::format(t) +
         ' ' + std::to_string(m.nx) + ' ' + std::to_string(m.ny) + ' ' + std::to_string(plane) +
         '\n';
}

inline double grid_norm(const DerivedParams& p, const Field2D& f) {
  KahanSum s;
  for (double v : f.values) s.add(v);
  const double h = f.grid.spacing();
  return s.value() * h * h * p.hbar();
}

inline void check_format(const std::string& f) {
  if (f != "csv" && f != "matrix") throw UsageError("--format must be csv or matrix");
}

inline void check_modes(const CartesianModes& m) {
  if (m.nx < 0 || m.ny < 0) throw UsageError("--nx and --ny must be non-negative");
}

inline void check_samples(int n) {
  if (n < 1) throw UsageError("--samples must be at least 1");
}

/// Evenly spaced sample k of n on [0, tmax]; a single sample sits at 0.
inline double sample_time(double tmax, int k, int n) {
  return n == 1 ? 0.0 : tmax * k / (n - 1);
}

}  // namespace detail

inline void trajectory(const DerivedParams& p, const GlobalOptions& g, const TrajectoryOptions& o,
                       std::ostream& os) {
  detail::check_samples(o.samples);
  double fallback = 2.0 * std::numbers::pi / p.Omega;
  if (p.gamma > 0.0) {
    const auto closed = orbit_closure(p, 1e-9, 1000);
    fallback = closed ? *closed : 2.0 * std::numbers::pi / p.gamma;
  }
  const double tmax = detail::parse_time(o.tmax, fallback);
  os << "t,Q1,Pi1,Q2,Pi2,xi2,L\n";
  const Invariants first = invariants(p, evolve(p, o.start, 0.0));
  double drift_xi = 0.0, drift_l = 0.0;
  for (int k = 0; k < o.samples; ++k) {
    const double t = detail::sample_time(tmax, k, o.samples);
    const PhasePoint x = evolve(p, o.start, t);
    const Invariants inv = invariants(p, x);
    io::write_row(os, {t, x.q1, x.pi1, x.q2, x.pi2, inv.xi2, inv.L});
    drift_xi = std::max(drift_xi, std::abs(inv.xi2 - first.xi2) / std::max(std::abs(first.xi2), 1e-300));
    drift_l = std::max(drift_l, std::abs(inv.L - first.L) / std::max(std::abs(first.L), 1e-300));
  }
  if (g.verify) {
    os << "# tmax=" << io::format(tmax) << '\n';
    os << "# max_rel_drift_xi2=" << io::format(drift_xi) << '\n';
    os << "# max_rel_drift_L=" << io::format(drift_l) << '\n';
  }
}

inline void wigner_grid(const DerivedParams& p, const GlobalOptions& g, const GridOptions& o,
                        std::ostream& os) {
  detail::check_format(o.format);
  detail::check_modes(o.modes);
  const Field2D f = trace_out(p, o.modes, o.t, o.plane, detail::grid_of(g), detail::rule_of(g));
  if (o.format == "matrix") {
    os << detail::matrix_header(f, o.t, o.modes, o.plane);
    io::write_matrix(os, f);
  } else {
    os << "r,k,value\n";
    io::write_long(os, f);
  }
  if (g.verify) os << "# normalization=" << io::format(detail::grid_norm(p, f)) << '\n';
}

/// Traced-out state at t = k pi / (8 gamma), k = 0 .. frames-1; frame 8 is the full swap.
inline void beat(const DerivedParams& p, const GlobalOptions& g, const GridOptions& o,
                 std::ostream& os) {
  detail::check_format(o.format);
  detail::check_modes(o.modes);
  if (!(p.gamma > 0.0)) throw PhysicsError("beat needs gamma > 0 (theta or eta nonzero)");
  if (o.frames < 1) throw UsageError("--frames must be at least 1");
  const auto rule = detail::rule_of(g);
  const auto grid = detail::grid_of(g);
  if (o.format == "csv") os << "t,r,k,value\n";
  std::vector<double> norms;
  for (int k = 0; k < o.frames; ++k) {
    const double t = k * std::numbers::pi / (8.0 * p.gamma);
    const Field2D f = trace_out(p, o.modes, t, o.plane, grid, rule);
    if (o.format == "matrix") {
      os << detail::matrix_header(f, t, o.modes, o.plane);
      io::write_matrix(os, f);
    } else {
      io::write_long(os, f, io::format(t) + ',');
    }
    norms.push_back(detail::grid_norm(p, f));
  }
  if (g.verify)
    for (double v : norms) os << "# normalization=" << io::format(v) << '\n';
}

inline void entropy(const DerivedParams& p, const GlobalOptions& g, const EntropyOptions& o,
                    std::ostream& os) {
  detail::check_modes(o.modes);
  detail::check_samples(o.samples);
  const double fallback =
      p.gamma > 0.0 ? std::numbers::pi / p.gamma : 2.0 * std::numbers::pi / p.Omega;
  const double tmax = detail::parse_time(o.tmax, fallback);
  const auto rule = detail::rule_of(g);
  os << "t,S1,S2,S12,I12\n";
  double worst = 0.0;
  for (int k = 0; k < o.samples; ++k) {
    const double t = detail::sample_time(tmax, k, o.samples);
    const EntropyReport r = entropies(p, o.modes, t, rule);
    io::write_row(os, {t, r.S1, r.S2, r.S12, r.I12});
    worst = std::max({worst, std::abs(r.S12)});
  }
  if (g.verify) {
    // The full state stays pure under unitary evolution.
    os << "# max_abs_S12=" << io::format(worst) << '\n';
  }
}

inline void thermo(const DerivedParams& p, const GlobalOptions& g, const ThermoOptions& o,
                   std::ostream& os) {
  if (o.spacing != "lin" && o.spacing != "log") throw UsageError("--spacing must be lin or log");
  std::vector<double> sigmas;
  if (o.single) {
    sigmas.push_back(o.sigma);
  } else {
    detail::check_samples(o.samples);
    if (!(o.sigma_min > 0.0 && o.sigma_max >= o.sigma_min))
      throw UsageError("need 0 < --sigma-min <= --sigma-max");
    for (int k = 0; k < o.samples; ++k) {
      const double u = o.samples == 1 ? 0.0 : static_cast<double>(k) / (o.samples - 1);
      sigmas.push_back(o.spacing == "lin"
                           ? o.sigma_min + u * (o.sigma_max - o.sigma_min)
                           : o.sigma_min * std::pow(o.sigma_max / o.sigma_min, u));
    }
  }
  const auto rule = detail::rule_of(g);
  const double e = p.beat_ratio;
  os << "sigma,Z,U,Sk,Cv,dS12,dI12\n";
  double gap = 0.0;
  for (double s : sigmas) {
    const ThermoPoint tp{s, e};
    const ThermoReport r = thermo_report(tp);
    const MissingInformation mi = missing_information(s, e, rule);
    io::write_row(os, {s, r.Z, r.U, r.Sk, r.Cv, mi.dS12, mi.dI12});
    gap = std::max(gap, std::abs(r.Cv - heat_capacity_hyperbolic(tp)));
  }
  if (g.verify) os << "# max_abs_Cv_formula_gap=" << io::format(gap) << '\n';
}

inline void orbital_distortion(const DerivedParams& p, const GlobalOptions& g, double sigma,
                               std::ostream& os) {
  const ThermoPoint tp{sigma, p.beat_ratio};
  const Field2D f = distortion_map(tp, detail::grid_of(g), detail::rule_of(g));
  os << f.grid.samples << ' ' << io::format(f.grid.extent) << ' ' << io::format(sigma) << ' '
     << io::format(p.beat_ratio) << '\n';
  io::write_matrix(os, f);
  if (g.verify) {
    KahanSum s;
    for (double v : f.values) s.add(v);
    const double h = f.grid.spacing();
    os << "# integral=" << io::format(s.value() * h * h) << '\n';
  }
}

inline void sigma_max_cmd(const DerivedParams& p, const GlobalOptions& g, const SigmaMaxOptions& o,
                          std::ostream& os) {
  const auto rule = detail::rule_of(g);
  const double e = p.beat_ratio;
  const double s_ds = sigma_max(e, MissingInfoKind::entropy, rule, o.bracket);
  const double s_di = sigma_max(e, MissingInfoKind::mutual_information, rule, o.bracket);
  os << "epsilon,sigma_max_dS,sigma_max_dI\n";
  io::write_row(os, {e, s_ds, s_di});
  if (g.verify) {
    os << "# dS12_at_max=" << io::format(missing_information(s_ds, e, rule).dS12) << '\n';
    os << "# dI12_at_max=" << io::format(missing_information(s_di, e, rule).dI12) << '\n';
  }
}

inline void zeeman(const DerivedParams& p, const GlobalOptions& g, const ZeemanOptions& o,
                   std::ostream& os) {
  if (o.levels < 0) throw UsageError("--levels must be non-negative");
  os << "kappa,ell,E_zeeman,n1,n2,E_cartesian,diff\n";
  double worst = 0.0;
  for (int shell = 0; shell <= o.levels; ++shell)
    for (int ell = -shell; ell <= shell; ell += 2) {
      const RadialModes rm{(shell - std::abs(ell)) / 2, ell};
      const ModeIndex m = mode_unmap(rm);
      const double ez = zeeman_energy(p, rm), ec = energy(p, m);
      os << rm.kappa << ',' << rm.ell << ',' << io::format(ez) << ',' << m.n1 << ',' << m.n2 << ','
         << io::format(ec) << ',' << io::format(ez - ec) << '\n';
      worst = std::max(worst, std::abs(ez - ec));
    }
  if (g.verify) os << "# max_abs_diff=" << io::format(worst) << '\n';
}

/**
 * @brief Command-line entry point; args excludes the program name.
 *
 * Results go to --out (or `out`); a one-line summary with the input digest
 * goes to `err`. Returns 0 on success, 2 for usage errors, 3 for violated
 * physical preconditions, 4 for grid coverage failures, 5 for numeric
 * failures and 1 for anything else.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Wigner-function toolkit for the noncommutative planar oscillator", "ncwigner"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  auto* m_opt = app.add_option("--m", g.config.mass, "mass");
  auto* w_opt = app.add_option("--omega", g.config.omega, "oscillator frequency");
  auto* h_opt = app.add_option("--hbar", g.config.hbar, "reduced Planck constant");
  auto* th_opt = app.add_option("--theta", g.config.theta, "position noncommutativity");
  auto* et_opt = app.add_option("--eta", g.config.eta, "momentum noncommutativity");
  auto* cf_opt = app.add_option("--config", g.config_path, "key=value file with m, omega, hbar, theta, eta");
  auto* eps_opt = app.add_option("--epsilon", g.epsilon,
                                 "beat ratio in natural units (theta = eta = epsilon)");
  eps_opt->excludes(m_opt)->excludes(w_opt)->excludes(h_opt)->excludes(th_opt)->excludes(et_opt)->excludes(cf_opt);
  app.add_option("--quad-order", g.quad_order, "Gauss-Hermite points per axis")->capture_default_str();
  app.add_option("--grid-n", g.grid_n, "grid samples per axis")->capture_default_str();
  app.add_option("--grid-x", g.grid_x, "grid half-width in scaled units")->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_flag("--verify", g.verify, "append '#' self-check lines");

  TrajectoryOptions traj;
  auto* s_traj = app.add_subcommand("trajectory", "phase-space orbit and its invariants");
  s_traj->add_option("--x", traj.start.x);
  s_traj->add_option("--y", traj.start.y);
  s_traj->add_option("--pi-x", traj.start.pi_x);
  s_traj->add_option("--pi-y", traj.start.pi_y);
  s_traj->add_option("--tmax", traj.tmax, "end time or 'auto' (one closed orbit)")->capture_default_str();
  s_traj->add_option("--samples", traj.samples)->capture_default_str();

  GridOptions grid;
  auto add_grid = [&](CLI::App* s, bool with_time) {
    s->add_option("--nx", grid.modes.nx)->capture_default_str();
    s->add_option("--ny", grid.modes.ny)->capture_default_str();
    s->add_option("--plane", grid.plane, "plane kept after the trace (1 or 2)")->capture_default_str();
    s->add_option("--format", grid.format, "csv or matrix")->capture_default_str();
    if (with_time) s->add_option("--t", grid.t)->capture_default_str();
  };
  auto* s_grid = app.add_subcommand("wigner-grid", "traced-out Wigner function on a grid");
  add_grid(s_grid, true);
  auto* s_beat = app.add_subcommand("beat", "traced-out state at t = k pi / (8 gamma)");
  add_grid(s_beat, false);
  s_beat->add_option("--frames", grid.frames)->capture_default_str();

  EntropyOptions ent;
  auto* s_ent = app.add_subcommand("entropy", "linear entropies and mutual information over time");
  s_ent->add_option("--nx", ent.modes.nx)->capture_default_str();
  s_ent->add_option("--ny", ent.modes.ny)->capture_default_str();
  s_ent->add_option("--tmax", ent.tmax, "end time or 'auto' (pi / gamma)")->capture_default_str();
  s_ent->add_option("--samples", ent.samples)->capture_default_str();

  ThermoOptions th;
  auto* s_th = app.add_subcommand("thermo", "thermodynamics and missing information versus sigma");
  s_th->add_option("--sigma-min", th.sigma_min)->capture_default_str();
  s_th->add_option("--sigma-max", th.sigma_max)->capture_default_str();
  s_th->add_option("--samples", th.samples)->capture_default_str();
  s_th->add_option("--spacing", th.spacing, "lin or log")->capture_default_str();
  auto* sigma_opt = s_th->add_option("--sigma", th.sigma, "single sigma instead of a sweep");

  double dist_sigma = 1.0;
  auto* s_dist = app.add_subcommand("orbital-distortion", "thermal position-distribution change");
  s_dist->add_option("--sigma", dist_sigma)->capture_default_str();

  SigmaMaxOptions sm;
  auto* s_sm = app.add_subcommand("sigma-max", "sigma maximizing the missing information");
  s_sm->add_option("--lo", sm.bracket.lo)->capture_default_str();
  s_sm->add_option("--hi", sm.bracket.hi)->capture_default_str();
  s_sm->add_option("--tol", sm.bracket.tol)->capture_default_str();

  ZeemanOptions zo;
  auto* s_z = app.add_subcommand("zeeman", "cylindrical spectrum against the Cartesian one");
  s_z->add_option("--levels", zo.levels, "largest n1 + n2")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : static_cast<int>(ErrorCategory::usage);
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    g.use_epsilon = eps_opt->count() > 0;
    th.single = sigma_opt->count() > 0;
    const DerivedParams p = detail::resolve_params(g, app);
    if (g.grid_n < 2) throw UsageError("--grid-n must be at least 2");

    std::ostringstream body;
    if (sub == s_traj) trajectory(p, g, traj, body);
    else if (sub == s_grid) wigner_grid(p, g, grid, body);
    else if (sub == s_beat) beat(p, g, grid, body);
    else if (sub == s_ent) entropy(p, g, ent, body);
    else if (sub == s_th) thermo(p, g, th, body);
    else if (sub == s_dist) orbital_distortion(p, g, dist_sigma, body);
    else if (sub == s_sm) sigma_max_cmd(p, g, sm, body);
    else if (sub == s_z) zeeman(p, g, zo, body);

    if (g.out.empty()) {
      out << body.str();
      out.flush();
    } else {
      std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open output file '" + g.out + "'");
      file << body.str();
      if (!file) throw std::runtime_error("failed writing '" + g.out + "'");
    }

    std::string joined;
    for (const auto& a : args) {
      joined += a;
      joined += '\0';
    }
    err << "ncwigner " << sub->get_name() << " inputs=" << io::hex(io::fnv1a(joined))
        << " out=" << (g.out.empty() ? std::string("-") : g.out) << '\n';
    return 0;
  } catch (const Error& e) {
    err << "ncwigner " << sub->get_name() << ": error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "ncwigner " << sub->get_name() << ": error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ncwigner::cli
