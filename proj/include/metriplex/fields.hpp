/// \file
/// Function-valued objects over phase space: scalar observables with
/// gradient oracles, Poisson tensors, metrics, 4-tensor fields, and Lie
/// algebra structure constants.  All evaluation paths are pure and
/// re-entrant; finite differencing probes never mutate shared state.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "metriplex/dense.hpp"
#include "metriplex/tensor_core.hpp"

namespace metriplex {

/// Central-difference step per coordinate: cbrt(eps) * max(1, |z_i|),
/// the usual accuracy/roundoff compromise for first derivatives.
inline double fd_step(double zi) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(zi));
}

/// Smooth real function of state.  If no analytic gradient is supplied the
/// gradient falls back to central differences of `value`.
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;  // optional analytic gradient

  double operator()(const Vec& z) const { return value(z); }

  bool has_analytic_gradient() const { return static_cast<bool>(grad); }

  Vec gradient(const Vec& z) const {
    if (grad) return grad(z);
    return fd_gradient(z);
  }

  Vec fd_gradient(const Vec& z) const {
    Vec g(z.size());
    Vec zp = z, zm = z;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double h = fd_step(z[i]);
      zp[i] = z[i] + h;
      zm[i] = z[i] - h;
      g[i] = (value(zp) - value(zm)) / (zp[i] - zm[i]);  // realized spacing
      zp[i] = z[i];
      zm[i] = z[i];
    }
    return g;
  }
};

/// f(z) = b . z + c0
inline ScalarField linear_field(Vec b, double c0 = 0.0) {
  ScalarField f;
  f.value = [b, c0](const Vec& z) { return dot(b, z) + c0; };
  f.grad = [b](const Vec&) { return b; };
  return f;
}

/// f(z) = z^r (coordinate function, 0-based index)
inline ScalarField coordinate_field(int n, int r) {
  return linear_field(unit(n, r));
}

/// f(z) = 1/2 z.Q.z + b.z + c0 with Q symmetric.
inline ScalarField quadratic_field(Mat Q, Vec b, double c0 = 0.0) {
  Q = symmetrized(Q);
  ScalarField f;
  f.value = [Q, b, c0](const Vec& z) { return 0.5 * bilinear(z, Q, z) + dot(b, z) + c0; };
  f.grad = [Q, b](const Vec& z) { return axpy(1.0, Q.apply(z), b); };
  return f;
}

/// Structure constants c^{ij}_k of a finite-dimensional Lie algebra.
/// Antisymmetry in (i,j) is enforced on construction; the Jacobi identity
/// is validated to 1e-12 and violations are rejected.
class StructureConstants {
 public:
  explicit StructureConstants(Rank3 c, bool validate = true) : c_(std::move(c)) {
    enforce_antisymmetry();
    if (validate) {
      const double d = jacobi_defect();
      if (d > 1e-12)
        throw std::invalid_argument("StructureConstants: Jacobi identity violated, defect " +
                                    std::to_string(d));
    }
  }

  /// Assemble from a flat list of (i, j, k, value) entries (0-based);
  /// the (j, i, k, -value) mirror is implied.
  static StructureConstants from_entries(
      int n, const std::vector<std::tuple<int, int, int, double>>& entries, bool validate = true) {
    Rank3 c(n);
    for (const auto& [i, j, k, v] : entries) {
      c(i, j, k) = v;
      c(j, i, k) = -v;
    }
    return StructureConstants(std::move(c), validate);
  }

  /// so(3): c^{ij}_k = -eps_{ijk}.
  static StructureConstants so3() {
    Rank3 c(3);
    c(0, 1, 2) = -1; c(1, 0, 2) = 1;
    c(1, 2, 0) = -1; c(2, 1, 0) = 1;
    c(2, 0, 1) = -1; c(0, 2, 1) = 1;
    return StructureConstants(std::move(c));
  }

  /// Constants of the Kirchhoff-Kida vortex patch system, read off from its
  /// Lie-Poisson tensor: J12 = z3, J13 = -z2, J23 = -z1.
  static StructureConstants kida() {
    Rank3 c(3);
    c(0, 1, 2) = 1;  c(1, 0, 2) = -1;
    c(0, 2, 1) = -1; c(2, 0, 1) = 1;
    c(1, 2, 0) = -1; c(2, 1, 0) = 1;
    return StructureConstants(std::move(c));
  }

  int dim() const { return c_.dim(); }
  double operator()(int i, int j, int k) const { return c_(i, j, k); }
  const Rank3& raw() const { return c_; }

  double jacobi_defect() const {
    const int n = c_.dim();
    double worst = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int s = 0; s < n; ++s) {
            double t = 0;
            for (int r = 0; r < n; ++r)
              t += c_(i, j, r) * c_(r, k, s) + c_(j, k, r) * c_(r, i, s) + c_(k, i, r) * c_(r, j, s);
            worst = std::max(worst, std::abs(t));
          }
    return worst;
  }

 private:
  void enforce_antisymmetry() {
    const int n = c_.dim();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j) {
            c_(i, j, k) = 0.0;
          } else {
            c_(j, i, k) = -c_(i, j, k);
          }
        }
  }

  Rank3 c_;
};

/// Antisymmetric Poisson tensor as a function of state, with an optional
/// analytic partial-derivative oracle dJ^{ij}/dz^k.
struct PoissonField {
  int dim = 0;
  std::function<Mat(const Vec&)> eval;
  std::function<Rank3(const Vec&)> partials;  // optional
  bool jacobi_verified = false;

  Mat operator()(const Vec& z) const { return eval(z); }

  /// dJ^{ij}/dz^k, analytic if supplied, else central differences.
  Rank3 partial(const Vec& z) const {
    if (partials) return partials(z);
    Rank3 p(dim);
    Vec zp = z, zm = z;
    for (int k = 0; k < dim; ++k) {
      const double h = fd_step(z[k]);
      zp[k] = z[k] + h;
      zm[k] = z[k] - h;
      const double denom = zp[k] - zm[k];
      const Mat jp = eval(zp), jm = eval(zm);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) p(i, j, k) = (jp(i, j) - jm(i, j)) / denom;
      zp[k] = z[k];
      zm[k] = z[k];
    }
    return p;
  }
};

/// J^{ij}(z) = c^{ij}_k z^k, tagged antisymmetric.
inline Mat lie_poisson_tensor(const StructureConstants& c, const Vec& z) {
  const int n = c.dim();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("lie_poisson_tensor: dimension mismatch");
  Mat J(n, 0.0, SymmetryTag::Antisymmetric);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += c(i, j, k) * z[k];
      J(i, j) = s;
    }
  return J;
}

inline PoissonField lie_poisson_field(const StructureConstants& c) {
  PoissonField J;
  J.dim = c.dim();
  J.eval = [c](const Vec& z) { return lie_poisson_tensor(c, z); };
  J.partials = [c](const Vec&) { return c.raw(); };
  J.jacobi_verified = true;  // Jacobi of c implies Jacobi of J
  return J;
}

/// Canonical symplectic tensor in dimension 2M.
inline PoissonField canonical_field(int m) {
  Mat Jc(2 * m, 0.0, SymmetryTag::Antisymmetric);
  for (int i = 0; i < m; ++i) {
    Jc(i, m + i) = 1.0;
    Jc(m + i, i) = -1.0;
  }
  PoissonField J;
  J.dim = 2 * m;
  J.eval = [Jc](const Vec&) { return Jc; };
  J.partials = [n = 2 * m](const Vec&) { return Rank3(n); };
  J.jacobi_verified = true;
  return J;
}

inline PoissonField constant_poisson_field(Mat Jc) {
  const int n = Jc.dim();
  Jc.set_tag(SymmetryTag::Antisymmetric);
  PoissonField J;
  J.dim = n;
  J.eval = [Jc](const Vec&) { return Jc; };
  J.partials = [n](const Vec&) { return Rank3(n); };
  J.jacobi_verified = true;  // constant antisymmetric tensors always satisfy Jacobi
  return J;
}

/// Rank-4 tensor field R^{ijkl}(z).  `constant` marks the Lie-metriplectic
/// case, `algebraic` claims the cyclic identity, `psd` claims nonnegative
/// sectional curvature (advisory; checked statistically by the verify
/// suite, never proven).
struct FourBracketField {
  int dim = 0;
  std::function<Rank4(const Vec&)> eval;
  bool constant = false;
  bool algebraic = false;
  bool psd = false;

  Rank4 operator()(const Vec& z) const { return eval(z); }

  static FourBracketField constant_tensor(Rank4 R, bool algebraic_flag, bool psd_flag) {
    FourBracketField f;
    f.dim = R.dim();
    f.eval = [R = std::move(R)](const Vec&) { return R; };
    f.constant = true;
    f.algebraic = algebraic_flag;
    f.psd = psd_flag;
    return f;
  }
};

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

/// Symmetric rank-2 tensor field with optional analytic partials
/// dg_{jk}/dz^r (index meaning left to the consuming construction: the
/// Levi-Civita path reads components covariantly, the Poisson-connection
/// path contravariantly, matching how each formula is written).
struct MetricField {
  int dim = 0;
  std::function<Mat(const Vec&)> eval;
  std::function<Rank3(const Vec&)> partials;  // optional, (j,k,r) -> dg_{jk}/dz^r
  Definiteness definiteness = Definiteness::PositiveDefinite;

  Mat operator()(const Vec& z) const { return eval(z); }

  Rank3 partial(const Vec& z) const {
    if (partials) return partials(z);
    Rank3 p(dim);
    Vec zp = z, zm = z;
    for (int r = 0; r < dim; ++r) {
      const double h = fd_step(z[r]);
      zp[r] = z[r] + h;
      zm[r] = z[r] - h;
      const double denom = zp[r] - zm[r];
      const Mat gp = eval(zp), gm = eval(zm);
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) p(j, k, r) = (gp(j, k) - gm(j, k)) / denom;
      zp[r] = z[r];
      zm[r] = z[r];
    }
    return p;
  }
};

inline MetricField constant_metric_field(Mat g, Definiteness d = Definiteness::PositiveDefinite) {
  const int n = g.dim();
  g.set_tag(SymmetryTag::Symmetric);
  MetricField m;
  m.dim = n;
  m.eval = [g](const Vec&) { return g; };
  m.partials = [n](const Vec&) { return Rank3(n); };
  m.definiteness = d;
  return m;
}

inline MetricField euclidean_metric_field(int n) {
  return constant_metric_field(Mat::identity(n), Definiteness::PositiveDefinite);
}

}  // namespace metriplex
