/// \file
/// 2D Euler vorticity dynamics on a doubly periodic grid with the enstrophy
/// 4-bracket reductions: Hamiltonian advection, double-bracket relaxation,
/// and the metriplectic (energy-conserving, enstrophy-producing) flow.
///
/// The Jacobian [f,g] = f_x g_y - f_y g_x is evaluated pseudo-spectrally
/// with a 2/3 dealiasing sphere; every produced field is re-truncated to
/// that sphere.  With all states kept inside the truncated subspace the
/// discrete integrals of the bracket identities hold to roundoff, which is
/// what the conservation monitors rely on.  An Arakawa finite-difference
/// Jacobian is available as an option.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "metriplex/dense.hpp"
#include "metriplex/fft.hpp"

namespace metriplex {

enum class JacobianScheme { Spectral, Arakawa };

struct Grid2D {
  int nx = 0, ny = 0;
  double lx = 0, ly = 0;

  Grid2D() = default;
  Grid2D(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    if (nx < 8 || ny < 8 || !is_power_of_two(nx) || !is_power_of_two(ny))
      throw std::invalid_argument("Grid2D: nx, ny must be powers of two >= 8");
    if (lx <= 0 || ly <= 0) throw std::invalid_argument("Grid2D: box lengths must be positive");
  }

  int size() const { return nx * ny; }
  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double cell_area() const { return dx() * dy(); }

  double kx(int m) const {
    const int k = (m <= nx / 2) ? m : m - nx;
    return 2.0 * 3.14159265358979323846 * k / lx;
  }
  double ky(int m) const {
    const int k = (m <= ny / 2) ? m : m - ny;
    return 2.0 * 3.14159265358979323846 * k / ly;
  }

  int idx(int i, int j) const { return i * ny + j; }
};

using FieldState2D = Vec;  // row-major nx x ny samples

namespace detail2d {

using CGrid = std::vector<std::complex<double>>;

inline CGrid fft2(const Grid2D& g, const Vec& u) {
  if (static_cast<int>(u.size()) != g.size())
    throw std::invalid_argument("field2d: state size does not match grid");
  CGrid a(u.begin(), u.end());
  // rows (y direction), then columns
  std::vector<std::complex<double>> row(g.ny), col(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) row[j] = a[g.idx(i, j)];
    row = fft(std::move(row));
    for (int j = 0; j < g.ny; ++j) a[g.idx(i, j)] = row[j];
  }
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) col[i] = a[g.idx(i, j)];
    col = fft(std::move(col));
    for (int i = 0; i < g.nx; ++i) a[g.idx(i, j)] = col[i];
  }
  return a;
}

inline Vec ifft2(const Grid2D& g, CGrid a) {
  std::vector<std::complex<double>> row(g.ny), col(g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) col[i] = a[g.idx(i, j)];
    col = ifft(std::move(col));
    for (int i = 0; i < g.nx; ++i) a[g.idx(i, j)] = col[i];
  }
  Vec u(g.size());
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) row[j] = a[g.idx(i, j)];
    row = ifft(std::move(row));
    for (int j = 0; j < g.ny; ++j) u[g.idx(i, j)] = row[j].real();
  }
  return u;
}

inline bool inside_dealias_sphere(const Grid2D& g, int i, int j) {
  const int ki = (i <= g.nx / 2) ? i : i - g.nx;
  const int kj = (j <= g.ny / 2) ? j : j - g.ny;
  return std::abs(ki) <= g.nx / 3 && std::abs(kj) <= g.ny / 3;
}

inline void truncate_spectrum(const Grid2D& g, CGrid& a) {
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (!inside_dealias_sphere(g, i, j)) a[g.idx(i, j)] = 0.0;
}

}  // namespace detail2d

/// Project onto the 2/3 dealiasing sphere.
inline Vec dealias(const Grid2D& g, const Vec& u) {
  auto a = detail2d::fft2(g, u);
  detail2d::truncate_spectrum(g, a);
  return detail2d::ifft2(g, std::move(a));
}

inline Vec partial_x(const Grid2D& g, const Vec& u) {
  auto a = detail2d::fft2(g, u);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      std::complex<double> m(0.0, g.kx(i));
      if (i == g.nx / 2) m = 0.0;
      a[g.idx(i, j)] *= m;
    }
  return detail2d::ifft2(g, std::move(a));
}

inline Vec partial_y(const Grid2D& g, const Vec& u) {
  auto a = detail2d::fft2(g, u);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      std::complex<double> m(0.0, g.ky(j));
      if (j == g.ny / 2) m = 0.0;
      a[g.idx(i, j)] *= m;
    }
  return detail2d::ifft2(g, std::move(a));
}

inline double grid_mean(const Grid2D& g, const Vec& u) {
  double s = 0;
  for (double v : u) s += v;
  return s / g.size();
}

/// Solve laplacian(psi) = omega for zero-mean omega; psi has zero mean.
inline Vec solve_streamfunction(const Grid2D& g, const Vec& omega) {
  auto a = detail2d::fft2(g, omega);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (i == 0 && j == 0) {
        a[0] = 0.0;
        continue;
      }
      const double kx = g.kx(i), ky = g.ky(j);
      a[g.idx(i, j)] /= -(kx * kx + ky * ky);
    }
  return detail2d::ifft2(g, std::move(a));
}

/// Arakawa's nine-point Jacobian (second order, conserves the discrete
/// integrals of f J(f,g) and g J(f,g)).
inline Vec arakawa_jacobian(const Grid2D& g, const Vec& f, const Vec& h) {
  Vec out(g.size());
  const double d = 12.0 * g.dx() * g.dy();
  auto ip = [&](int i) { return (i + 1) % g.nx; };
  auto im = [&](int i) { return (i + g.nx - 1) % g.nx; };
  auto jp = [&](int j) { return (j + 1) % g.ny; };
  auto jm = [&](int j) { return (j + g.ny - 1) % g.ny; };
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double jpp = (f[g.idx(ip(i), j)] - f[g.idx(im(i), j)]) *
                             (h[g.idx(i, jp(j))] - h[g.idx(i, jm(j))]) -
                         (f[g.idx(i, jp(j))] - f[g.idx(i, jm(j))]) *
                             (h[g.idx(ip(i), j)] - h[g.idx(im(i), j)]);
      const double jpx = f[g.idx(ip(i), j)] * (h[g.idx(ip(i), jp(j))] - h[g.idx(ip(i), jm(j))]) -
                         f[g.idx(im(i), j)] * (h[g.idx(im(i), jp(j))] - h[g.idx(im(i), jm(j))]) -
                         f[g.idx(i, jp(j))] * (h[g.idx(ip(i), jp(j))] - h[g.idx(im(i), jp(j))]) +
                         f[g.idx(i, jm(j))] * (h[g.idx(ip(i), jm(j))] - h[g.idx(im(i), jm(j))]);
      const double jxp = f[g.idx(ip(i), jp(j))] * (h[g.idx(i, jp(j))] - h[g.idx(ip(i), j)]) -
                         f[g.idx(im(i), jm(j))] * (h[g.idx(im(i), j)] - h[g.idx(i, jm(j))]) -
                         f[g.idx(im(i), jp(j))] * (h[g.idx(i, jp(j))] - h[g.idx(im(i), j)]) +
                         f[g.idx(ip(i), jm(j))] * (h[g.idx(ip(i), j)] - h[g.idx(i, jm(j))]);
      out[g.idx(i, j)] = (jpp + jpx + jxp) / d;
    }
  return out;
}

/// Dealiased pseudo-spectral Jacobian [f,g] = f_x g_y - f_y g_x.
inline Vec spectral_jacobian(const Grid2D& g, const Vec& f, const Vec& h) {
  const Vec fx = partial_x(g, f), fy = partial_y(g, f);
  const Vec hx = partial_x(g, h), hy = partial_y(g, h);
  Vec out(g.size());
  for (int i = 0; i < g.size(); ++i) out[i] = fx[i] * hy[i] - fy[i] * hx[i];
  return dealias(g, out);
}

inline Vec jacobian(const Grid2D& g, const Vec& f, const Vec& h,
                    JacobianScheme scheme = JacobianScheme::Spectral) {
  return scheme == JacobianScheme::Spectral ? spectral_jacobian(g, f, h)
                                            : arakawa_jacobian(g, f, h);
}

enum class Euler2DMode { Hamiltonian, DoubleBracket, Metriplectic };

/// Vorticity tendencies of the enstrophy 4-bracket reductions:
///   hamiltonian:    -[omega, psi]
///   double_bracket: -lambda [omega, [omega, psi]]
///   metriplectic:    lambda [psi, [omega, psi]]
/// with laplacian(psi) = omega.  Requires zero-mean vorticity.
inline Vec euler2d_rhs(Euler2DMode mode, const Grid2D& g, const Vec& omega, double lambda,
                       JacobianScheme scheme = JacobianScheme::Spectral) {
  const double mean = grid_mean(g, omega);
  if (std::abs(mean) > 1e-10 * std::max(1.0, norm2(omega)))
    throw std::invalid_argument("euler2d_rhs: vorticity must have zero mean");
  const Vec psi = solve_streamfunction(g, omega);
  switch (mode) {
    case Euler2DMode::Hamiltonian: {
      Vec adv = jacobian(g, omega, psi, scheme);
      for (double& v : adv) v = -v;
      return adv;
    }
    case Euler2DMode::DoubleBracket: {
      const Vec chi = jacobian(g, omega, psi, scheme);
      Vec rhs = jacobian(g, omega, chi, scheme);
      for (double& v : rhs) v *= -lambda;
      return rhs;
    }
    case Euler2DMode::Metriplectic: {
      const Vec chi = jacobian(g, omega, psi, scheme);
      Vec rhs = jacobian(g, psi, chi, scheme);
      for (double& v : rhs) v *= lambda;
      return rhs;
    }
  }
  throw std::invalid_argument("euler2d_rhs: unknown mode");
}

/// H = 1/2 integral(omega psi)  (negative of the kinetic energy).
inline double euler2d_energy(const Grid2D& g, const Vec& omega) {
  const Vec psi = solve_streamfunction(g, omega);
  double s = 0;
  for (int i = 0; i < g.size(); ++i) s += omega[i] * psi[i];
  return 0.5 * s * g.cell_area();
}

/// S = 1/2 integral(omega^2), the enstrophy.
inline double euler2d_enstrophy(const Grid2D& g, const Vec& omega) {
  double s = 0;
  for (double v : omega) s += v * v;
  return 0.5 * s * g.cell_area();
}

inline double euler2d_circulation(const Grid2D& g, const Vec& omega) {
  double s = 0;
  for (double v : omega) s += v;
  return s * g.cell_area();
}

}  // namespace metriplex
