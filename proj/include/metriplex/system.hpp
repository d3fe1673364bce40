/// \file
/// The bundle the integrator consumes: (J, R, H, S) plus monitored Casimirs
/// and tolerances.

#pragma once

#include <string>
#include <vector>

#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"

namespace metriplex {

struct Tolerances {
  double tol_H = 1e-8;    ///< relative energy drift per 100 time units at dt = 1e-3
  double tol_S = 1e-12;   ///< absolute per-step entropy backslide allowance
  double atol = kDefaultAtol;
};

struct MetriplecticSystem {
  int dim = 0;
  std::string name;
  PoissonField J;
  FourBracketField R;
  ScalarField H;
  ScalarField S;
  std::vector<ScalarField> casimirs;
  std::vector<std::string> casimir_names;
  /// Metric used by the finite-dimensional double-bracket mode, D = J g J^T.
  Mat db_metric;
  Tolerances tol;
  /// Verification sample box is [box_lo, box_hi]^dim.
  double box_lo = -1.0;
  double box_hi = 1.0;
};

}  // namespace metriplex
