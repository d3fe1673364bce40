/// \file
/// Command implementations behind the metriplex binary: verify a configured
/// bundle, simulate it, or run one of the canned demos.  Exit codes:
/// 0 success, 1 property/convergence failure, 2 usage/config error.

#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "metriplex/config.hpp"
#include "metriplex/dynamics.hpp"
#include "metriplex/field1d.hpp"
#include "metriplex/field2d.hpp"
#include "metriplex/systems.hpp"
#include "metriplex/verify.hpp"

namespace metriplex {

struct CliOptions {
  std::optional<std::string> out_dir;      // --out
  std::optional<std::uint64_t> seed;       // --seed
  int jobs = 1;                            // --jobs
};

namespace cli_detail {

inline std::string resolve_out_dir(const RunConfig* rc, const CliOptions& opt,
                                   const std::string& fallback) {
  if (opt.out_dir) return *opt.out_dir;
  if (const char* env = std::getenv("METRIPLEX_OUT"); env && *env) return env;
  if (rc && !rc->output_dir.empty()) return rc->output_dir;
  return fallback;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

inline std::string fmt(double v) { return Trajectory::fmt17(v); }

}  // namespace cli_detail

/// Run the verification suites for a configured system and write JSON and
/// text reports; exit 0 iff the overall verdict passes.
inline int cmd_verify(const std::string& config_path, const CliOptions& opt) {
  RunConfig rc;
  MetriplecticSystem sys;
  try {
    rc = load_config(config_path);
    if (opt.seed) rc.verification.seed = *opt.seed;
    sys = build_system(rc.system_spec);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  VerifyOptions vo;
  vo.samples = rc.verification.samples;
  vo.covector_pairs = rc.verification.covector_pairs;
  vo.seed = rc.verification.seed;
  vo.box_lo = rc.verification.box_lo;
  vo.box_hi = rc.verification.box_hi;
  const auto samples = sample_states(sys.dim, vo);

  VerificationReport report = verify_jacobi(sys.J, samples);
  report.merge(verify_minimal_metriplectic(sys.R, samples, vo));
  report.merge(verify_degeneracy(sys, samples));
  if (sys.H.has_analytic_gradient()) report.merge(verify_gradient(sys.H, samples));
  if (sys.S.has_analytic_gradient()) report.merge(verify_gradient(sys.S, samples));

  const auto dir = std::filesystem::path(cli_detail::resolve_out_dir(&rc, opt, "out"));
  std::filesystem::create_directories(dir);
  cli_detail::write_text(dir / "verify.json", report.to_json().dump(2) + "\n");
  cli_detail::write_text(dir / "verify.txt", report.to_text());
  std::cout << report.to_text();
  return report.verdict() ? 0 : 1;
}

namespace cli_detail {

struct SimOutcome {
  bool clean = true;
  std::string summary;
};

inline SimOutcome run_one(const MetriplecticSystem& sys, const RunConfig& rc, const Vec& z0,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Trajectory tr = integrate(sys, z0, rc.integrator.t_end, rc.integrator.dt, rc.mode,
                                  rc.integrator.method, rc.integrator.record_stride);
  {
    std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
    tr.write_csv(csv, sys.casimir_names);
  }
  const double h_budget = sys.tol.tol_H * std::max(1.0, rc.integrator.t_end / 100.0);
  const bool monotone_mode =
      rc.mode == Mode::Full || rc.mode == Mode::Dissipative || rc.mode == Mode::KM;
  bool clean = !tr.diverged && tr.h_drift_rel <= h_budget &&
               (!monotone_mode || tr.entropy_violations == 0);

  std::ostringstream os;
  os << "mode: " << to_string(rc.mode) << "\n";
  os << "steps: " << static_cast<long>(rc.integrator.t_end / rc.integrator.dt + 0.5) << "\n";
  os << "diverged: " << (tr.diverged ? "yes" : "no") << "\n";
  if (!tr.message.empty()) os << "note: " << tr.message << "\n";
  os << "H_drift_rel: " << fmt(tr.h_drift_rel) << " (budget " << fmt(h_budget) << ")\n";
  os << "S_monotonicity_violations: " << tr.entropy_violations << "\n";
  os << "max_S_backslide: " << fmt(tr.max_entropy_backslide) << "\n";
  os << "final_state:";
  for (double v : tr.final_state()) os << " " << fmt(v);
  os << "\n";
  os << "final_H: " << fmt(tr.energy.back()) << "\n";
  os << "final_S: " << fmt(tr.entropy.back()) << "\n";
  os << "clean: " << (clean ? "yes" : "no") << "\n";
  return {clean, os.str()};
}

}  // namespace cli_detail

/// Integrate the configured system (plus optional sweep of initial states)
/// and write trajectory CSVs and a summary; exit 0 on a clean run.
inline int cmd_simulate(const std::string& config_path, const CliOptions& opt) {
  RunConfig rc;
  MetriplecticSystem sys;
  try {
    rc = load_config(config_path);
    sys = build_system(rc.system_spec);
    if (rc.initial_state.empty()) throw ConfigError("config is missing \"initial_state\"");
    if (static_cast<int>(rc.initial_state.size()) != sys.dim)
      throw ConfigError("initial_state dimension does not match the system");
    for (const auto& z : rc.sweep)
      if (static_cast<int>(z.size()) != sys.dim)
        throw ConfigError("sweep state dimension does not match the system");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const auto base = std::filesystem::path(cli_detail::resolve_out_dir(&rc, opt, "out"));
  std::vector<Vec> starts{rc.initial_state};
  starts.insert(starts.end(), rc.sweep.begin(), rc.sweep.end());

  std::vector<cli_detail::SimOutcome> outcomes(starts.size());
  const int jobs = std::max(1, opt.jobs);
  if (starts.size() == 1 || jobs == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      const auto dir = starts.size() == 1 ? base : base / ("run_" + std::to_string(i));
      outcomes[i] = cli_detail::run_one(sys, rc, starts[i], dir);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < starts.size(); i = next.fetch_add(1))
        outcomes[i] = cli_detail::run_one(sys, rc, starts[i], base / ("run_" + std::to_string(i)));
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool all_clean = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes.size() > 1) os << "--- run_" << i << " ---\n";
    os << outcomes[i].summary;
    all_clean = all_clean && outcomes[i].clean;
  }
  std::filesystem::create_directories(base);
  cli_detail::write_text(base / "summary.txt", os.str());
  std::cout << os.str();
  return all_clean ? 0 : 1;
}

namespace cli_detail {

/// Shared stepper for the field demos: RK4 on a flat state vector with a
/// diagnostics row per record stride.  Returns the final state.
template <class Rhs, class DiagRow>
inline Vec run_field_demo(const std::filesystem::path& csv_path, const std::string& header,
                          Vec u, double dt, long nsteps, int stride, Rhs&& rhs,
                          DiagRow&& diag_row) {
  std::ofstream csv(csv_path, std::ios::binary);
  csv << header << "\n";
  csv << diag_row(0.0, u) << "\n";
  for (long s = 1; s <= nsteps; ++s) {
    u = detail::rk4_step(rhs, u, dt);
    if (s % stride == 0 || s == nsteps) csv << diag_row(s * dt, u) << "\n";
  }
  return u;
}

inline std::string field_row(double t, const Grid1D& g, const Vec& u, double H, double S,
                             const Vec& rhs) {
  double l2 = 0, spd = 0;
  for (double v : u) l2 += v * v;
  for (double v : rhs) spd += v * v;
  return fmt(t) + "," + fmt(std::sqrt(l2 * g.dx())) + "," + fmt(H) + "," + fmt(S) + "," +
         fmt(std::sqrt(spd * g.dx()));
}

inline void write_snapshot_1d(const std::filesystem::path& p, const Grid1D& g, const Vec& u) {
  std::ofstream out(p, std::ios::binary);
  out << "x,u\n";
  for (int i = 0; i < g.n; ++i) out << fmt(g.x(i)) << "," << fmt(u[i]) << "\n";
}

inline void write_snapshot_2d(const std::filesystem::path& p, const Grid2D& g, const Vec& w) {
  std::ofstream out(p, std::ios::binary);
  out << "x,y,omega\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      out << fmt(i * g.dx()) << "," << fmt(j * g.dy()) << "," << fmt(w[g.idx(i, j)]) << "\n";
}

inline int demo_rigid_body(const std::filesystem::path& dir) {
  RigidBodyParams p;
  p.lambda = 0.1;
  const auto sys = rigid_body(p);
  RunConfig rc;
  rc.mode = Mode::Full;
  rc.integrator.dt = 1e-3;
  rc.integrator.t_end = 100.0;
  rc.integrator.record_stride = 100;
  const auto out = run_one(sys, rc, {1.0, 1.0, 2.0}, dir);
  write_text(dir / "summary.txt", out.summary);
  std::cout << out.summary;
  return out.clean ? 0 : 1;
}

inline int demo_kida(const std::filesystem::path& dir) {
  // placeholder Hamiltonian, independent of z2 as the level-set geometry
  // requires; not part of the bracket itself
  Mat Qh(3, 0.0, SymmetryTag::Symmetric);
  Qh(0, 0) = 1.0;
  Qh(2, 2) = 1.0;
  KidaParams p;
  p.hamiltonian = quadratic_field(Qh, Vec(3, 0.0));
  p.lambda = 0.1;
  const auto sys = kida(p);
  RunConfig rc;
  rc.mode = Mode::Full;
  rc.integrator.dt = 1e-3;
  rc.integrator.t_end = 40.0;
  rc.integrator.record_stride = 40;
  const auto out = run_one(sys, rc, {1.2, 0.8, 0.5}, dir);
  write_text(dir / "summary.txt", out.summary);
  std::cout << out.summary;
  return out.clean ? 0 : 1;
}

inline int demo_viscous1d(const std::filesystem::path& dir) {
  const Grid1D g(256, 2.0 * 3.14159265358979323846);
  Dissipative1DParams p;
  p.W = 0.05;  // viscosity
  Vec u0(g.n);
  for (int i = 0; i < g.n; ++i)
    u0[i] = 2.0 + 0.5 * std::sin(2.0 * 3.14159265358979323846 * g.x(i) / g.length) +
            0.3 * std::cos(4.0 * 3.14159265358979323846 * g.x(i) / g.length);
  write_snapshot_1d(dir / "initial.csv", g, u0);
  const auto rhs = [&](const Vec& u) {
    // full metriplectic flow of the h(u)=1/u^2 bracket: u_t = d(u^-2) + nu d^2 u
    Vec r = hamiltonian_rhs_1d(g, u);
    const Vec d = dissipative_rhs_1d(Dissipation1D::Viscous, g, u, p);
    for (int i = 0; i < g.n; ++i) r[i] += d[i];
    return r;
  };
  const auto row = [&](double t, const Vec& u) {
    return field_row(t, g, u, integrate_grid(g, u), quadratic_entropy(g, u), rhs(u));
  };
  const Vec u = run_field_demo(dir / "series.csv", "t,u_l2,H,S,speed", u0, 1e-3, 2000, 50, rhs, row);
  write_snapshot_1d(dir / "final.csv", g, u);
  const double drift = std::abs(integrate_grid(g, u) - integrate_grid(g, u0)) /
                       std::max(1.0, std::abs(integrate_grid(g, u0)));
  std::ostringstream os;
  os << "H_drift_rel: " << fmt(drift) << "\n";
  os << "S_initial: " << fmt(quadratic_entropy(g, u0)) << "\n";
  os << "S_final: " << fmt(quadratic_entropy(g, u)) << "\n";
  write_text(dir / "summary.txt", os.str());
  std::cout << os.str();
  return drift < 1e-8 ? 0 : 1;
}

inline int demo_kdv(const std::filesystem::path& dir) {
  const Grid1D g(512, 80.0);
  Dissipative1DParams p;
  p.W = 1e-3;
  const double alpha = 0.5;
  p.c = -4.0 * alpha * alpha;
  const Vec u0 = kdv_soliton(g, alpha, g.length / 2.0);
  write_snapshot_1d(dir / "initial.csv", g, u0);
  const auto rhs = [&](const Vec& u) {
    return dissipative_rhs_1d(Dissipation1D::KdvConserving, g, u, p);
  };
  const auto row = [&](double t, const Vec& u) {
    return field_row(t, g, u, kdv_hamiltonian(g, u, p.c), integrate_grid(g, u), rhs(u));
  };
  const Vec u = run_field_demo(dir / "series.csv", "t,u_l2,H,S,speed", u0, 2e-3, 500, 25, rhs, row);
  write_snapshot_1d(dir / "final.csv", g, u);

  const double sdot_soliton = std::abs(entropy_production_1d(Dissipation1D::KdvConserving, g, u0, p));
  Vec mix(g.n);
  for (int i = 0; i < g.n; ++i)
    mix[i] = 0.5 * (kdv_soliton(g, alpha, g.length / 3.0)[i] +
                    kdv_soliton(g, alpha, 2.0 * g.length / 3.0)[i]);
  const double sdot_mix = std::abs(entropy_production_1d(Dissipation1D::KdvConserving, g, mix, p));
  const double h0 = kdv_hamiltonian(g, u0, p.c);
  const double drift = std::abs(kdv_hamiltonian(g, u, p.c) - h0) / std::max(1.0, std::abs(h0));
  std::ostringstream os;
  os << "Sdot_soliton: " << fmt(sdot_soliton) << "\n";
  os << "Sdot_two_soliton: " << fmt(sdot_mix) << "\n";
  os << "quiescence_ratio: " << fmt(sdot_soliton / std::max(1e-300, sdot_mix)) << "\n";
  os << "H_drift_rel: " << fmt(drift) << "\n";
  write_text(dir / "summary.txt", os.str());
  std::cout << os.str();
  return (drift < 1e-8 && sdot_soliton < 1e-4 * sdot_mix) ? 0 : 1;
}

inline int demo_ott_sudan(const std::filesystem::path& dir) {
  const Grid1D g(256, 2.0 * 3.14159265358979323846);
  Dissipative1DParams p;
  p.W = 0.5;
  Vec u0(g.n);
  for (int i = 0; i < g.n; ++i) u0[i] = std::cos(g.x(i)) + 0.3 * std::sin(3.0 * g.x(i));
  write_snapshot_1d(dir / "initial.csv", g, u0);
  const auto rhs = [&](const Vec& u) {
    return dissipative_rhs_1d(Dissipation1D::OttSudan, g, u, p);
  };
  const auto row = [&](double t, const Vec& u) {
    return field_row(t, g, u, integrate_grid(g, u), quadratic_entropy(g, u), rhs(u));
  };
  const Vec u = run_field_demo(dir / "series.csv", "t,u_l2,H,S,speed", u0, 5e-3, 400, 10, rhs, row);
  write_snapshot_1d(dir / "final.csv", g, u);
  const double drift = std::abs(integrate_grid(g, u) - integrate_grid(g, u0));
  std::ostringstream os;
  os << "H_drift_abs: " << fmt(drift) << "\n";
  os << "S_initial: " << fmt(quadratic_entropy(g, u0)) << "\n";
  os << "S_final: " << fmt(quadratic_entropy(g, u)) << "\n";
  write_text(dir / "summary.txt", os.str());
  std::cout << os.str();
  return drift < 1e-8 ? 0 : 1;
}

inline int demo_euler2d(const std::filesystem::path& dir) {
  const double pi = 3.14159265358979323846;
  const Grid2D g(32, 32, 2.0 * pi, 2.0 * pi);
  const double lambda = 0.1;
  Vec w0(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double x = i * g.dx(), y = j * g.dy();
      w0[g.idx(i, j)] = std::sin(x) * std::cos(2.0 * y) + 0.5 * std::cos(3.0 * x + y) +
                        0.3 * std::sin(x + 4.0 * y);
    }
  w0 = dealias(g, w0);
  const double m = grid_mean(g, w0);
  for (double& v : w0) v -= m;
  write_snapshot_2d(dir / "initial.csv", g, w0);

  const auto rhs = [&](const Vec& w) { return euler2d_rhs(Euler2DMode::Metriplectic, g, w, lambda); };
  std::ofstream csv(dir / "series.csv", std::ios::binary);
  csv << "t,H,S,circulation,speed\n";
  Vec w = w0;
  const double dt = 0.01;
  const long nsteps = 1000;
  const double h0 = euler2d_energy(g, w0);
  double smin_slack = 0.0;
  double sprev = euler2d_enstrophy(g, w0);
  auto write_row = [&](double t, const Vec& wa) {
    const Vec r = rhs(wa);
    double spd = 0;
    for (double v : r) spd += v * v;
    csv << fmt(t) << "," << fmt(euler2d_energy(g, wa)) << "," << fmt(euler2d_enstrophy(g, wa))
        << "," << fmt(euler2d_circulation(g, wa)) << "," << fmt(std::sqrt(spd * g.cell_area()))
        << "\n";
  };
  write_row(0.0, w);
  for (long s = 1; s <= nsteps; ++s) {
    w = detail::rk4_step(rhs, w, dt);
    const double snow = euler2d_enstrophy(g, w);
    smin_slack = std::min(smin_slack, snow - sprev);
    sprev = snow;
    if (s % 20 == 0 || s == nsteps) write_row(s * dt, w);
  }
  write_snapshot_2d(dir / "final.csv", g, w);
  const double drift = std::abs(euler2d_energy(g, w) - h0) / std::max(1.0, std::abs(h0));
  std::ostringstream os;
  os << "H_drift_rel: " << fmt(drift) << "\n";
  os << "S_initial: " << fmt(euler2d_enstrophy(g, w0)) << "\n";
  os << "S_final: " << fmt(euler2d_enstrophy(g, w)) << "\n";
  os << "min_S_step_increment: " << fmt(smin_slack) << "\n";
  write_text(dir / "summary.txt", os.str());
  std::cout << os.str();
  return (drift < 1e-7 && smin_slack > -1e-10) ? 0 : 1;
}

}  // namespace cli_detail

/// Run a canned demo by name into <out>/<name>/.
inline int cmd_demo(const std::string& name, const CliOptions& opt) {
  const auto base = std::filesystem::path(cli_detail::resolve_out_dir(nullptr, opt, "out"));
  const auto dir = base / name;
  try {
    if (name == "rigid_body" || name == "kida" || name == "viscous1d" || name == "kdv" ||
        name == "ott_sudan" || name == "euler2d") {
      std::filesystem::create_directories(dir);
    } else {
      std::cerr << "unknown demo: " << name
                << " (expected rigid_body|kida|viscous1d|kdv|ott_sudan|euler2d)\n";
      return 2;
    }
    if (name == "rigid_body") return cli_detail::demo_rigid_body(dir);
    if (name == "kida") return cli_detail::demo_kida(dir);
    if (name == "viscous1d") return cli_detail::demo_viscous1d(dir);
    if (name == "kdv") return cli_detail::demo_kdv(dir);
    if (name == "ott_sudan") return cli_detail::demo_ott_sudan(dir);
    return cli_detail::demo_euler2d(dir);
  } catch (const std::exception& e) {
    std::cerr << "demo failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace metriplex
