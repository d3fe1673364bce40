/// \file
/// 1+1 field-theory demos on a periodic grid: Fourier-collocation
/// derivatives, the Hilbert transform, and the dissipative vector fields of
/// the Kulkarni-Nomizu field brackets (viscous, KdV-conserving, Ott-Sudan).
///
/// Everything works in strong (collocation) form.  Because the spectral
/// derivative matrix is exactly antisymmetric on the grid and the Hilbert
/// multiplier exactly anti-Hermitian, the discrete pairing of dH/du with
/// each dissipative vector field vanishes to roundoff: the discrete image
/// of energy conservation.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "metriplex/dense.hpp"
#include "metriplex/fft.hpp"

namespace metriplex {

struct Grid1D {
  int n = 0;
  double length = 0;

  Grid1D() = default;
  Grid1D(int n_, double length_) : n(n_), length(length_) {
    if (n < 8 || !is_power_of_two(n))
      throw std::invalid_argument("Grid1D: n must be a power of two >= 8");
    if (length <= 0) throw std::invalid_argument("Grid1D: length must be positive");
  }

  double dx() const { return length / n; }

  double x(int i) const { return i * dx(); }

  /// Signed wavenumber of FFT bin m.
  double wavenumber(int m) const {
    const int half = n / 2;
    const int k = (m <= half) ? m : m - n;
    return 2.0 * 3.14159265358979323846 * k / length;
  }
};

using FieldState1D = Vec;

namespace detail1d {

inline std::vector<std::complex<double>> to_spectral(const Grid1D& g, const Vec& u) {
  if (static_cast<int>(u.size()) != g.n)
    throw std::invalid_argument("field1d: state size does not match grid");
  std::vector<std::complex<double>> a(g.n);
  for (int i = 0; i < g.n; ++i) a[i] = u[i];
  return fft(std::move(a));
}

inline Vec to_physical(std::vector<std::complex<double>> a) {
  a = ifft(std::move(a));
  Vec u(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) u[i] = a[i].real();
  return u;
}

}  // namespace detail1d

/// d^order u / dx^order by Fourier collocation; exact for resolved modes.
/// The Nyquist bin is zeroed for odd orders (its derivative has no real
/// representation on the grid).
inline Vec spectral_derivative(const Grid1D& g, const Vec& u, int order = 1) {
  if (order < 0) throw std::invalid_argument("spectral_derivative: order must be >= 0");
  auto a = detail1d::to_spectral(g, u);
  for (int m = 0; m < g.n; ++m) {
    const std::complex<double> ik(0.0, g.wavenumber(m));
    std::complex<double> mult(1.0, 0.0);
    for (int p = 0; p < order; ++p) mult *= ik;
    if ((order % 2 == 1) && m == g.n / 2) mult = 0.0;
    a[m] *= mult;
  }
  return detail1d::to_physical(std::move(a));
}

/// Hilbert transform: multiplier -i sgn(k), zero mode (and Nyquist) -> 0.
inline Vec hilbert_transform(const Grid1D& g, const Vec& u) {
  auto a = detail1d::to_spectral(g, u);
  for (int m = 0; m < g.n; ++m) {
    const double k = g.wavenumber(m);
    if (m == 0 || m == g.n / 2 || k == 0.0) {
      a[m] = 0.0;
    } else {
      a[m] *= std::complex<double>(0.0, k > 0 ? -1.0 : 1.0);
    }
  }
  return detail1d::to_physical(std::move(a));
}

inline double integrate_grid(const Grid1D& g, const Vec& u) {
  double s = 0;
  for (double v : u) s += v;
  return s * g.dx();
}

/// H = integral( u^3/6 - (du)^2/2 + c u^2/2 ), the KdV Hamiltonian for
/// Gardner's bracket in a frame boosted by c.
inline double kdv_hamiltonian(const Grid1D& g, const Vec& u, double c) {
  const Vec du = spectral_derivative(g, u, 1);
  double s = 0;
  for (int i = 0; i < g.n; ++i)
    s += u[i] * u[i] * u[i] / 6.0 - 0.5 * du[i] * du[i] + 0.5 * c * u[i] * u[i];
  return s * g.dx();
}

/// Functional gradient of the KdV Hamiltonian: H_u = c u + u^2/2 + u_xx,
/// built with the same spectral operators as the discrete H.
inline Vec kdv_h_gradient(const Grid1D& g, const Vec& u, double c) {
  Vec hu = spectral_derivative(g, u, 2);
  for (int i = 0; i < g.n; ++i) hu[i] += c * u[i] + 0.5 * u[i] * u[i];
  return hu;
}

/// S = 1/2 integral(u^2), the quadratic Casimir used by the viscous and
/// Ott-Sudan examples.
inline double quadratic_entropy(const Grid1D& g, const Vec& u) {
  double s = 0;
  for (double v : u) s += v * v;
  return 0.5 * s * g.dx();
}

enum class Dissipation1D { Viscous, KdvConserving, OttSudan };

struct Dissipative1DParams {
  double W = 1.0;  ///< weight (the viscosity nu for the viscous kind)
  double c = 0.0;  ///< KdV boost speed
};

namespace detail1d {

/// Dissipative vector field (u, S)_H of the derivative/multiplier K-N pair
///   Sigma(a,b) = -(da)(db),  M(a,b) = a b,
/// in strong form for arbitrary H_u, S_u and constant weight W:
///   (u,S)_H = d(W H_u^2 dS_u) - d(W H_u dH_u S_u) - W (dH_u)^2 S_u + W H_u dH_u dS_u.
inline Vec kn_derivative_pair_rhs(const Grid1D& g, double W, const Vec& hu, const Vec& su) {
  const Vec dhu = spectral_derivative(g, hu, 1);
  const Vec dsu = spectral_derivative(g, su, 1);
  Vec t1(g.n), t2(g.n), rest(g.n);
  for (int i = 0; i < g.n; ++i) {
    t1[i] = W * hu[i] * hu[i] * dsu[i];
    t2[i] = W * hu[i] * dhu[i] * su[i];
    rest[i] = -W * dhu[i] * dhu[i] * su[i] + W * hu[i] * dhu[i] * dsu[i];
  }
  const Vec dt1 = spectral_derivative(g, t1, 1);
  const Vec dt2 = spectral_derivative(g, t2, 1);
  Vec rhs(g.n);
  for (int i = 0; i < g.n; ++i) rhs[i] = dt1[i] - dt2[i] + rest[i];
  return rhs;
}

}  // namespace detail1d

/// The dissipative part (u, S)_H of the respective field 4-bracket:
///   viscous:        H = int u,  S = u^2/2 pair    ->  W d^2 u
///   kdv_conserving: Gardner Casimir S = int u     -> -d(W H_u dH_u) - W (dH_u)^2
///   ott_sudan:      Hilbert Sigma, H = int u      -> -d(W Hil[u]) - Hil[W du]
inline Vec dissipative_rhs_1d(Dissipation1D kind, const Grid1D& g, const Vec& u,
                              const Dissipative1DParams& p) {
  switch (kind) {
    case Dissipation1D::Viscous: {
      // H = int u  ->  H_u = 1;  S = 1/2 int u^2  ->  S_u = u
      const Vec hu(g.n, 1.0);
      return detail1d::kn_derivative_pair_rhs(g, p.W, hu, u);
    }
    case Dissipation1D::KdvConserving: {
      // H = KdV Hamiltonian;  S = int u  ->  S_u = 1
      const Vec hu = kdv_h_gradient(g, u, p.c);
      const Vec su(g.n, 1.0);
      return detail1d::kn_derivative_pair_rhs(g, p.W, hu, su);
    }
    case Dissipation1D::OttSudan: {
      // Hilbert-Sigma pair with H = int u: (u,S)_H = -d(W Hil[S_u]) - Hil[W d S_u]
      Vec a = hilbert_transform(g, u);
      for (double& v : a) v *= p.W;
      const Vec da = spectral_derivative(g, a, 1);
      Vec b = spectral_derivative(g, u, 1);
      for (double& v : b) v *= p.W;
      const Vec hb = hilbert_transform(g, b);
      Vec rhs(g.n);
      for (int i = 0; i < g.n; ++i) rhs[i] = -da[i] - hb[i];
      return rhs;
    }
  }
  throw std::invalid_argument("dissipative_rhs_1d: unknown kind");
}

/// dS/dt under the dissipative flow, as the discrete pairing of the entropy
/// gradient with the vector field.
inline double entropy_production_1d(Dissipation1D kind, const Grid1D& g, const Vec& u,
                                    const Dissipative1DParams& p) {
  const Vec rhs = dissipative_rhs_1d(kind, g, u, p);
  Vec su;
  if (kind == Dissipation1D::KdvConserving)
    su.assign(g.n, 1.0);  // S = int u
  else
    su = u;  // S = 1/2 int u^2
  double s = 0;
  for (int i = 0; i < g.n; ++i) s += su[i] * rhs[i];
  return s * g.dx();
}

/// dH/dt under the dissipative flow (the discrete First Law; zero up to
/// roundoff by the antisymmetry of the spectral operators).
inline double energy_rate_1d(Dissipation1D kind, const Grid1D& g, const Vec& u,
                             const Dissipative1DParams& p) {
  const Vec rhs = dissipative_rhs_1d(kind, g, u, p);
  Vec hu;
  if (kind == Dissipation1D::KdvConserving)
    hu = kdv_h_gradient(g, u, p.c);
  else
    hu.assign(g.n, 1.0);  // H = int u
  double s = 0;
  for (int i = 0; i < g.n; ++i) s += hu[i] * rhs[i];
  return s * g.dx();
}

/// Hamiltonian part of the h(u) = 1/u^2 bracket with H = int u:
/// u_t = d(u^-2).  Only defined for strictly positive data; the bracket has
/// a singularity at u = 0.
inline Vec hamiltonian_rhs_1d(const Grid1D& g, const Vec& u) {
  for (double v : u)
    if (!(v > 0.0))
      throw std::domain_error("hamiltonian_rhs_1d: requires strictly positive u");
  Vec w(g.n);
  for (int i = 0; i < g.n; ++i) w[i] = 1.0 / (u[i] * u[i]);
  return spectral_derivative(g, w, 1);
}

/// Matched quiescent soliton of the boosted-frame KdV dissipation:
/// u = a sech^2(alpha (x - x0)) with a = 12 alpha^2 and boost c = -4 alpha^2
/// makes dH_u/dx vanish identically.
inline Vec kdv_soliton(const Grid1D& g, double alpha, double x0) {
  Vec u(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double s = 1.0 / std::cosh(alpha * (g.x(i) - x0));
    u[i] = 12.0 * alpha * alpha * s * s;
  }
  return u;
}

}  // namespace metriplex
