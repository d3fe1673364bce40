/// \file
/// Time integration of metriplectic flow and its restrictions, with
/// conservation and production monitors.  Fixed-step RK4 (default) or
/// forward Euler; conservation is monitored, not enforced.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "metriplex/brackets.hpp"
#include "metriplex/dense.hpp"
#include "metriplex/system.hpp"

namespace metriplex {

enum class Mode { Full, Hamiltonian, Dissipative, KM, DoubleBracket };
enum class Method { RK4, Euler };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Full: return "full";
    case Mode::Hamiltonian: return "hamiltonian";
    case Mode::Dissipative: return "dissipative";
    case Mode::KM: return "km";
    case Mode::DoubleBracket: return "double_bracket";
  }
  return "?";
}

/// zdot for the requested restriction of the flow.
///   full:           J dH + G dS      (G = R contracted twice with dH)
///   hamiltonian:    J dH
///   dissipative:    G dS
///   km:             J_KM dH          (J_KM = R contracted with dS, dH)
///   double_bracket: (J g J^T) dH     (g = the system's db_metric)
inline Vec vector_field(const MetriplecticSystem& sys, const Vec& z, Mode mode) {
  if (!all_finite(z)) throw std::invalid_argument("vector_field: non-finite state");
  switch (mode) {
    case Mode::Hamiltonian:
      return sys.J(z).apply(sys.H.gradient(z));
    case Mode::Dissipative: {
      const Vec gH = sys.H.gradient(z);
      return g_metric_from(sys.R(z), gH).apply(sys.S.gradient(z));
    }
    case Mode::Full: {
      const Vec gH = sys.H.gradient(z);
      const Vec ham = sys.J(z).apply(gH);
      const Vec dis = g_metric_from(sys.R(z), gH).apply(sys.S.gradient(z));
      return axpy(1.0, ham, dis);
    }
    case Mode::KM: {
      const Vec gH = sys.H.gradient(z);
      return km_tensor_from(sys.R(z), sys.S.gradient(z), gH).apply(gH);
    }
    case Mode::DoubleBracket: {
      if (sys.db_metric.dim() != sys.dim)
        throw std::invalid_argument("vector_field: double-bracket mode needs a db_metric");
      return double_bracket_tensor_from(sys.J(z), sys.db_metric).apply(sys.H.gradient(z));
    }
  }
  throw std::logic_error("vector_field: unknown mode");
}

/// Escapes are recorded, not thrown: a diverged run carries its last valid
/// state, a relaxation that ran out of time reports converged = false.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> energy;    // H series
  std::vector<double> entropy;   // S series
  std::vector<std::vector<double>> casimir_series;  // one row per step
  std::vector<double> speed;     // |zdot|

  bool diverged = false;
  bool converged = false;        // used by relax_to_equilibrium
  std::string message;

  long entropy_violations = 0;   // steps with S_{n+1} < S_n - tol_S
  double max_entropy_backslide = 0;
  double h_drift_rel = 0;        // max |H - H0| / max(1, |H0|)

  const Vec& final_state() const { return states.back(); }

  static std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  /// CSV columns: t, z1..zN, H, S, C1..Ck, speed.
  void write_csv(std::ostream& os, const std::vector<std::string>& casimir_names) const {
    os << "t";
    if (!states.empty())
      for (std::size_t i = 0; i < states[0].size(); ++i) os << ",z" << (i + 1);
    os << ",H,S";
    for (const auto& name : casimir_names) os << "," << name;
    os << ",speed\n";
    for (std::size_t r = 0; r < times.size(); ++r) {
      os << fmt17(times[r]);
      for (double v : states[r]) os << "," << fmt17(v);
      os << "," << fmt17(energy[r]) << "," << fmt17(entropy[r]);
      for (double v : casimir_series[r]) os << "," << fmt17(v);
      os << "," << fmt17(speed[r]) << "\n";
    }
  }
};

namespace detail {

template <class F>
Vec rk4_step(F&& f, const Vec& u, double dt) {
  const Vec k1 = f(u);
  const Vec k2 = f(axpy(0.5 * dt, k1, u));
  const Vec k3 = f(axpy(0.5 * dt, k2, u));
  const Vec k4 = f(axpy(dt, k3, u));
  Vec out(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

template <class F>
Vec euler_step(F&& f, const Vec& u, double dt) {
  return axpy(dt, f(u), u);
}

}  // namespace detail

/// Fixed-step integration with per-step monitors.  `record_stride` thins the
/// stored trajectory (monitors still see every step); the final step is
/// always recorded.
inline Trajectory integrate(const MetriplecticSystem& sys, const Vec& z0, double t_end, double dt,
                            Mode mode, Method method = Method::RK4, int record_stride = 1) {
  if (dt <= 0 || t_end <= 0) throw std::invalid_argument("integrate: dt and t_end must be positive");
  if (record_stride < 1) record_stride = 1;
  // non-finite intermediate stages propagate as NaN so the step is flagged
  // as divergence rather than escaping as an exception
  const auto rhs = [&](const Vec& z) {
    if (!all_finite(z)) return Vec(z.size(), std::numeric_limits<double>::quiet_NaN());
    return vector_field(sys, z, mode);
  };

  Trajectory tr;
  const long nsteps = static_cast<long>(t_end / dt + 0.5);
  const bool entropy_monotone = (mode == Mode::Full || mode == Mode::Dissipative || mode == Mode::KM);

  Vec z = z0;
  double h0 = sys.H(z0);
  double s_prev = sys.S(z0);

  auto record = [&](double t, const Vec& state) {
    tr.times.push_back(t);
    tr.states.push_back(state);
    const double h = sys.H(state), s = sys.S(state);
    tr.energy.push_back(h);
    tr.entropy.push_back(s);
    std::vector<double> cas;
    cas.reserve(sys.casimirs.size());
    for (const auto& c : sys.casimirs) cas.push_back(c(state));
    tr.casimir_series.push_back(std::move(cas));
    tr.speed.push_back(norm2(rhs(state)));
    tr.h_drift_rel = std::max(tr.h_drift_rel, std::abs(h - h0) / std::max(1.0, std::abs(h0)));
  };

  record(0.0, z);
  for (long step = 1; step <= nsteps; ++step) {
    const Vec znext = (method == Method::RK4) ? detail::rk4_step(rhs, z, dt)
                                              : detail::euler_step(rhs, z, dt);
    if (!all_finite(znext)) {
      tr.diverged = true;
      tr.message = "divergence at t = " + Trajectory::fmt17(step * dt) +
                   "; last valid state recorded";
      if (tr.times.back() != (step - 1) * dt) record((step - 1) * dt, z);
      return tr;
    }
    z = znext;
    // monitors run every step even when the stored trajectory is thinned
    const double s = sys.S(z);
    if (entropy_monotone && s < s_prev - sys.tol.tol_S) {
      ++tr.entropy_violations;
      tr.max_entropy_backslide = std::max(tr.max_entropy_backslide, s_prev - s);
    }
    s_prev = s;
    tr.h_drift_rel = std::max(tr.h_drift_rel,
                              std::abs(sys.H(z) - h0) / std::max(1.0, std::abs(h0)));
    if (step % record_stride == 0 || step == nsteps) record(step * dt, z);
  }
  return tr;
}

/// Integrate until |zdot| <= stop_speed or max_time runs out.  An
/// equilibrium start returns immediately.
inline std::pair<Vec, Trajectory> relax_to_equilibrium(const MetriplecticSystem& sys, const Vec& z0,
                                                       Mode mode, double max_time,
                                                       double stop_speed, double dt,
                                                       Method method = Method::RK4,
                                                       int record_stride = 1) {
  if (dt <= 0 || max_time <= 0)
    throw std::invalid_argument("relax_to_equilibrium: dt and max_time must be positive");
  const auto rhs = [&](const Vec& z) {
    if (!all_finite(z)) return Vec(z.size(), std::numeric_limits<double>::quiet_NaN());
    return vector_field(sys, z, mode);
  };

  Trajectory tr;
  Vec z = z0;
  double h0 = sys.H(z0);
  double s_prev = sys.S(z0);
  const bool entropy_monotone = (mode == Mode::Full || mode == Mode::Dissipative || mode == Mode::KM);

  auto record = [&](double t, const Vec& state, double spd) {
    tr.times.push_back(t);
    tr.states.push_back(state);
    const double h = sys.H(state);
    tr.energy.push_back(h);
    tr.entropy.push_back(sys.S(state));
    std::vector<double> cas;
    for (const auto& c : sys.casimirs) cas.push_back(c(state));
    tr.casimir_series.push_back(std::move(cas));
    tr.speed.push_back(spd);
    tr.h_drift_rel = std::max(tr.h_drift_rel, std::abs(h - h0) / std::max(1.0, std::abs(h0)));
  };

  double spd = norm2(rhs(z));
  record(0.0, z, spd);
  if (spd <= stop_speed) {
    tr.converged = true;
    return {z, tr};
  }

  const long nsteps = static_cast<long>(max_time / dt + 0.5);
  for (long step = 1; step <= nsteps; ++step) {
    const Vec znext = (method == Method::RK4) ? detail::rk4_step(rhs, z, dt)
                                              : detail::euler_step(rhs, z, dt);
    if (!all_finite(znext)) {
      tr.diverged = true;
      tr.message = "divergence during relaxation";
      return {z, tr};
    }
    z = znext;
    const double s = sys.S(z);
    if (entropy_monotone && s < s_prev - sys.tol.tol_S) {
      ++tr.entropy_violations;
      tr.max_entropy_backslide = std::max(tr.max_entropy_backslide, s_prev - s);
    }
    s_prev = s;
    tr.h_drift_rel = std::max(tr.h_drift_rel,
                              std::abs(sys.H(z) - h0) / std::max(1.0, std::abs(h0)));
    spd = norm2(rhs(z));
    if (step % record_stride == 0 || spd <= stop_speed || step == nsteps)
      record(step * dt, z, spd);
    if (spd <= stop_speed) {
      tr.converged = true;
      return {z, tr};
    }
  }
  tr.converged = false;
  tr.message = "no equilibrium within max_time; partial trajectory returned";
  return {z, tr};
}

}  // namespace metriplex
