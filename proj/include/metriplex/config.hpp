/// \file
/// JSON run configuration: system specification (kind + parameters,
/// structure constants as flat (i,j,k,value) lists, constant metrics,
/// quadratic/linear scalar fields), integrator settings, verification
/// settings, and output paths.

#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "metriplex/dynamics.hpp"
#include "metriplex/systems.hpp"

namespace metriplex {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  Method method = Method::RK4;
  int record_stride = 1;
};

struct VerificationConfig {
  std::uint64_t seed = 0;
  int samples = 100;
  double box_lo = -1.0;
  double box_hi = 1.0;
  int covector_pairs = 1000;
};

struct RunConfig {
  int schema_version = 1;
  nlohmann::json system_spec;
  Mode mode = Mode::Full;
  IntegratorConfig integrator;
  VerificationConfig verification;
  Vec initial_state;
  std::vector<Vec> sweep;  // optional extra initial states
  std::string output_dir;  // may be empty; resolved by the CLI
};

namespace cfg {

inline Mode parse_mode(const std::string& s) {
  if (s == "full") return Mode::Full;
  if (s == "hamiltonian") return Mode::Hamiltonian;
  if (s == "dissipative") return Mode::Dissipative;
  if (s == "km") return Mode::KM;
  if (s == "double_bracket") return Mode::DoubleBracket;
  throw ConfigError("unknown mode: " + s);
}

inline Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::RK4;
  if (s == "euler") return Method::Euler;
  throw ConfigError("unknown integrator method: " + s);
}

inline Mat parse_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  Mat m(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw ConfigError("matrix rows must all have length " + std::to_string(n));
    for (int k = 0; k < n; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

inline Vec parse_vec(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  Vec v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

/// Scalar fields are quadratic expressions
///   f(z) = 1/2 z.Q.z + b.z + c0
/// given as {"quadratic": Q, "linear": b, "constant": c0}, any subset.
inline ScalarField parse_scalar_field(const nlohmann::json& j, int dim) {
  Mat Q(dim, 0.0, SymmetryTag::Symmetric);
  Vec b(dim, 0.0);
  double c0 = 0.0;
  if (j.contains("quadratic")) {
    Q = parse_matrix(j["quadratic"]);
    if (Q.dim() != dim) throw ConfigError("scalar field quadratic part has wrong dimension");
  }
  if (j.contains("linear")) {
    b = parse_vec(j["linear"]);
    if (static_cast<int>(b.size()) != dim)
      throw ConfigError("scalar field linear part has wrong dimension");
  }
  if (j.contains("constant")) c0 = j["constant"].get<double>();
  return quadratic_field(Q, b, c0);
}

/// Structure constants arrive as a flat list of [i, j, k, value] with
/// 1-based indices; the (j,i,k,-value) mirrors are implied.
inline StructureConstants parse_structure_constants(const nlohmann::json& j, int dim) {
  std::vector<std::tuple<int, int, int, double>> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 4)
      throw ConfigError("structure_constants entries must be [i, j, k, value]");
    const int i = row[0].get<int>(), jj = row[1].get<int>(), k = row[2].get<int>();
    if (i < 1 || i > dim || jj < 1 || jj > dim || k < 1 || k > dim)
      throw ConfigError("structure_constants indices must be 1-based and <= dim");
    entries.emplace_back(i - 1, jj - 1, k - 1, row[3].get<double>());
  }
  try {
    return StructureConstants::from_entries(dim, entries);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace cfg

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
  RunConfig rc;
  try {
    rc.schema_version = j.value("schema_version", 1);
    if (rc.schema_version != 1)
      throw ConfigError("unsupported schema_version " + std::to_string(rc.schema_version));
    if (!j.contains("system")) throw ConfigError("config is missing the \"system\" block");
    rc.system_spec = j["system"];
    if (j.contains("mode")) rc.mode = cfg::parse_mode(j["mode"].get<std::string>());
    if (j.contains("integrator")) {
      const auto& ji = j["integrator"];
      rc.integrator.dt = ji.value("dt", rc.integrator.dt);
      rc.integrator.t_end = ji.value("t_end", rc.integrator.t_end);
      rc.integrator.record_stride = ji.value("record_stride", rc.integrator.record_stride);
      if (ji.contains("method")) rc.integrator.method = cfg::parse_method(ji["method"]);
      if (rc.integrator.dt <= 0) throw ConfigError("integrator.dt must be positive");
      if (rc.integrator.t_end <= 0) throw ConfigError("integrator.t_end must be positive");
    }
    if (j.contains("verification")) {
      const auto& jv = j["verification"];
      rc.verification.seed = jv.value("seed", rc.verification.seed);
      rc.verification.samples = jv.value("samples", rc.verification.samples);
      rc.verification.covector_pairs = jv.value("covector_pairs", rc.verification.covector_pairs);
      if (jv.contains("box")) {
        const Vec b = cfg::parse_vec(jv["box"]);
        if (b.size() != 2 || b[0] >= b[1]) throw ConfigError("verification.box must be [lo, hi]");
        rc.verification.box_lo = b[0];
        rc.verification.box_hi = b[1];
      }
    }
    if (j.contains("initial_state")) rc.initial_state = cfg::parse_vec(j["initial_state"]);
    if (j.contains("sweep"))
      for (const auto& row : j["sweep"]) rc.sweep.push_back(cfg::parse_vec(row));
    if (j.contains("output")) rc.output_dir = j["output"].value("dir", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return rc;
}

/// Instantiate the configured system (kind: rigid_body | kida | lie_poisson).
inline MetriplecticSystem build_system(const nlohmann::json& spec) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "rigid_body") {
      RigidBodyParams p;
      if (spec.contains("inertia")) {
        const Vec I = cfg::parse_vec(spec["inertia"]);
        if (I.size() != 3) throw ConfigError("rigid_body inertia must have 3 entries");
        p.I1 = I[0];
        p.I2 = I[1];
        p.I3 = I[2];
      }
      p.lambda = spec.value("lambda", p.lambda);
      auto sys = rigid_body(p);
      if (spec.contains("entropy")) sys.S = cfg::parse_scalar_field(spec["entropy"], 3);
      return sys;
    }
    if (kind == "kida") {
      KidaParams p;
      p.lambda = spec.value("lambda", p.lambda);
      if (!spec.contains("hamiltonian"))
        throw ConfigError("kida system requires a \"hamiltonian\" field");
      p.hamiltonian = cfg::parse_scalar_field(spec["hamiltonian"], 3);
      return kida(p);
    }
    if (kind == "lie_poisson") {
      const int dim = spec.at("dim").get<int>();
      if (dim < 1) throw ConfigError("lie_poisson dim must be >= 1");
      const StructureConstants c =
          cfg::parse_structure_constants(spec.at("structure_constants"), dim);
      Mat g4 = Mat::identity(dim);
      if (spec.contains("metric")) {
        g4 = cfg::parse_matrix(spec["metric"]);
        if (g4.dim() != dim) throw ConfigError("lie_poisson metric has wrong dimension");
      }
      const ScalarField H = cfg::parse_scalar_field(spec.at("hamiltonian"), dim);
      const ScalarField S = cfg::parse_scalar_field(spec.at("entropy"), dim);
      try {
        return lie_poisson_system(c, g4, H, S);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    throw ConfigError("unknown system kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("system spec error: ") + e.what());
  }
}

}  // namespace metriplex
