/// \file
/// Factory constructors for the worked finite-dimensional systems: the
/// dissipative free rigid body, the Kirchhoff-Kida vortex patch, and
/// user-defined Lie-Poisson systems with Lie-metriplectic 4-tensors.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "metriplex/constructors.hpp"
#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"
#include "metriplex/system.hpp"

namespace metriplex {

struct RigidBodyParams {
  double I1 = 1, I2 = 2, I3 = 3;  ///< principal moments of inertia
  double lambda = 0.1;            ///< dissipation strength
};

/// Free rigid body with angular-momentum entropy S = |L|^2, the so(3)
/// Casimir.  H = sum L_i^2 / (2 I_i); the 4-tensor is the Euclidean space
/// form with curvature lambda, whose G-metric projects out dH.
inline MetriplecticSystem rigid_body(const RigidBodyParams& p) {
  if (p.I1 <= 0 || p.I2 <= 0 || p.I3 <= 0)
    throw std::invalid_argument("rigid_body: moments of inertia must be positive");
  MetriplecticSystem sys;
  sys.dim = 3;
  sys.name = "rigid_body";
  sys.J = lie_poisson_field(StructureConstants::so3());

  sys.R = FourBracketField::constant_tensor(space_form(Mat::identity(3), p.lambda),
                                            /*algebraic=*/true, /*psd=*/p.lambda >= 0);

  Mat Qh(3, 0.0, SymmetryTag::Symmetric);
  Qh(0, 0) = 1.0 / p.I1;
  Qh(1, 1) = 1.0 / p.I2;
  Qh(2, 2) = 1.0 / p.I3;
  sys.H = quadratic_field(Qh, Vec(3, 0.0));

  Mat Qs = Mat::identity(3).scaled_by(2.0);
  sys.S = quadratic_field(Qs, Vec(3, 0.0));

  sys.casimirs = {sys.S};
  sys.casimir_names = {"C_L2"};
  sys.db_metric = Mat::identity(3);
  return sys;
}

struct KidaParams {
  ScalarField hamiltonian;  ///< supplied by the caller; not fixed by the bracket
  double lambda = 0.1;
};

/// Kirchhoff-Kida elliptical vortex patch: Lie-Poisson with
/// J = [[0, z3, -z2], [-z3, 0, -z1], [z2, z1, 0]] and hyperboloid Casimir
/// C = z1^2 - z2^2 - z3^2 used as the entropy.  The Hamiltonian is injected.
inline MetriplecticSystem kida(const KidaParams& p) {
  if (!p.hamiltonian.value) throw std::invalid_argument("kida: a Hamiltonian must be supplied");
  MetriplecticSystem sys;
  sys.dim = 3;
  sys.name = "kida";
  sys.J = lie_poisson_field(StructureConstants::kida());
  sys.R = FourBracketField::constant_tensor(space_form(Mat::identity(3), p.lambda),
                                            /*algebraic=*/true, /*psd=*/p.lambda >= 0);
  sys.H = p.hamiltonian;

  Mat Qc(3, 0.0, SymmetryTag::Symmetric);
  Qc(0, 0) = 2.0;
  Qc(1, 1) = -2.0;
  Qc(2, 2) = -2.0;
  sys.S = quadratic_field(Qc, Vec(3, 0.0));

  sys.casimirs = {sys.S};
  sys.casimir_names = {"C_hyper"};
  sys.db_metric = Mat::identity(3);
  return sys;
}

namespace detail {
/// Sampled PSD probe for the advisory psd flag on user metrics.
inline bool sampled_psd(const Mat& g, int trials = 512) {
  auto rng = seeded_engine(7);
  for (int t = 0; t < trials; ++t) {
    const Vec v = random_vec(rng, g.dim());
    if (bilinear(v, g, v) < -1e-12 * std::max(1.0, g.max_abs())) return false;
  }
  return true;
}
}  // namespace detail

/// User-defined Lie-Poisson system with constant (Lie-metriplectic)
/// 4-tensor R = torsion_removal(c c g4).  The candidate entropy must be a
/// Casimir of the resulting Poisson tensor; violations are rejected.
inline MetriplecticSystem lie_poisson_system(const StructureConstants& c, const Mat& g4,
                                             const ScalarField& H, const ScalarField& S,
                                             double box_lo = -1.0, double box_hi = 1.0) {
  MetriplecticSystem sys;
  sys.dim = c.dim();
  sys.name = "lie_poisson";
  sys.J = lie_poisson_field(c);
  sys.R = FourBracketField::constant_tensor(torsion_removal(lie_algebra_4tensor(c, g4)),
                                            /*algebraic=*/true, /*psd=*/detail::sampled_psd(g4));
  sys.H = H;
  sys.S = S;
  sys.casimirs = {S};
  sys.casimir_names = {"C1"};
  sys.db_metric = Mat::identity(sys.dim);
  sys.box_lo = box_lo;
  sys.box_hi = box_hi;

  // entropy must be a Casimir of J: sampled |J dS| over the declared box
  auto rng = seeded_engine(0);
  double worst = 0;
  for (int s = 0; s < 100; ++s) {
    const Vec z = random_vec(rng, sys.dim, box_lo, box_hi);
    const Vec jds = sys.J(z).apply(S.gradient(z));
    for (double v : jds) worst = std::max(worst, std::abs(v));
  }
  if (worst > 1e-8)
    throw std::invalid_argument("lie_poisson_system: S is not a Casimir of J (|J dS| = " +
                                std::to_string(worst) + ")");
  return sys;
}

}  // namespace metriplex
