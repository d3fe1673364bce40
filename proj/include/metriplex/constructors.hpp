/// \file
/// Recipes that produce metriplectic 4-tensors: Kulkarni-Nomizu products,
/// space forms, Lie algebra tensors with optional torsion removal,
/// Cartan-Killing tensors, curvature from affine/Levi-Civita data, the
/// Poisson-connection (contravariant) curvature, and the GENERIC
/// linearize/symmetrize conversion.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "metriplex/brackets.hpp"
#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"
#include "metriplex/tensor_core.hpp"

namespace metriplex {

namespace detail {
inline void require_symmetric(const Mat& m, const char* who, double atol = kDefaultAtol) {
  double d = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
  if (d > atol * std::max(1.0, m.max_abs()))
    throw std::invalid_argument(std::string(who) + ": input matrix is not symmetric, defect " +
                                std::to_string(d));
}
}  // namespace detail

/// Kulkarni-Nomizu product of two symmetric bivectors:
///   R^{ijkl} = s^{ik} m^{jl} - s^{il} m^{jk} + m^{ik} s^{jl} - m^{il} s^{jk}.
/// Carries all four curvature symmetries; PSD inputs give nonnegative
/// sectional curvature (Cauchy-Schwarz).
inline Rank4 kn_product(const Mat& sigma, const Mat& mu) {
  if (sigma.dim() != mu.dim()) throw std::invalid_argument("kn_product: dimension mismatch");
  detail::require_symmetric(sigma, "kn_product(sigma)");
  detail::require_symmetric(mu, "kn_product(mu)");
  const int n = sigma.dim();
  Rank4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          R(i, j, k, l) = sigma(i, k) * mu(j, l) - sigma(i, l) * mu(j, k) +
                          mu(i, k) * sigma(j, l) - mu(i, l) * sigma(j, k);
  return R;
}

/// Constant-curvature ("space form") tensor R^{ijkl} = K (g^{ik} g^{jl} - g^{il} g^{jk}).
/// Equals (K/2) * kn_product(g, g).
inline Rank4 space_form(const Mat& g, double K) {
  detail::require_symmetric(g, "space_form");
  const int n = g.dim();
  Rank4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) R(i, j, k, l) = K * (g(i, k) * g(j, l) - g(i, l) * g(j, k));
  return R;
}

/// Lie algebra 4-tensor A^{ijkl} = c^{ij}_r c^{kl}_s g^{rs}.  Minimal
/// metriplectic by construction; the cyclic identity generally
/// fails for dim >= 4 and is restored by torsion_removal.
inline Rank4 lie_algebra_4tensor(const StructureConstants& c, const Mat& g) {
  if (g.dim() != c.dim()) throw std::invalid_argument("lie_algebra_4tensor: dimension mismatch");
  detail::require_symmetric(g, "lie_algebra_4tensor");
  const int n = c.dim();
  // w^{ij}_r = c^{ij}_s g^{sr} once, then one contraction per entry
  Rank3 w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) {
        double s = 0;
        for (int q = 0; q < n; ++q) s += c(i, j, q) * g(q, r);
        w(i, j, r) = s;
      }
  Rank4 A(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int r = 0; r < n; ++r) s += w(i, j, r) * c(k, l, r);
          A(i, j, k, l) = s;
        }
  return A;
}

/// Unique torsion-free (algebraic curvature) representative R = A - T with
/// T the cyclic part.  The induced 2-bracket (f,H;g,H) is unchanged.
inline Rank4 torsion_removal(const Rank4& A, double atol = kDefaultAtol) {
  return A - cyclic_part(A, atol);
}

/// Cartan-Killing form g_CK^{rs} = lambda c^{rm}_n c^{sn}_m.
/// lambda = -1/2 makes so(3) come out as the identity.
inline Mat cartan_killing(const StructureConstants& c, double lambda = -0.5) {
  const int n = c.dim();
  Mat g(n, 0.0, SymmetryTag::Symmetric);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      double t = 0;
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) t += c(r, m, k) * c(s, k, m);
      g(r, s) = lambda * t;
    }
  return symmetrized(g);
}

/// Torsion-free Lie algebra tensor for the Cartan-Killing metric, via the
/// closed form B^{ijkl} = (g^{rs}/3)(2 c^{ij}_r c^{kl}_s + c^{ik}_r c^{jl}_s - c^{il}_r c^{jk}_s).
/// Requires a semisimple algebra (invertible Killing form).
inline Rank4 ck_4tensor(const StructureConstants& c, double lambda = -0.5) {
  const Mat g = cartan_killing(c, lambda);
  try {
    (void)inverse(g);
  } catch (const std::domain_error&) {
    throw std::domain_error("ck_4tensor: singular Killing form (algebra is not semisimple)");
  }
  const int n = c.dim();
  Rank4 B(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double t = 0;
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
              t += g(r, s) * (2.0 * c(i, j, r) * c(k, l, s) + c(i, k, r) * c(j, l, s) -
                              c(i, l, r) * c(j, k, s));
          B(i, j, k, l) = t / 3.0;
        }
  return B;
}

enum class ChristoffelKind { CovariantLeviCivita, Contravariant };

/// Connection coefficients at a point.  Covariant kind stores
/// gamma(l,j,k) = Gamma^l_{jk}; contravariant kind gamma(i,j,l) = Gamma^{ij}_l.
struct Christoffel {
  Rank3 gamma;
  ChristoffelKind kind = ChristoffelKind::CovariantLeviCivita;

  int dim() const { return gamma.dim(); }

  /// Torsion-freeness of the covariant kind: Gamma^l_{jk} = Gamma^l_{kj}.
  double covariant_symmetry_defect() const {
    double d = 0;
    const int n = gamma.dim();
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) d = std::max(d, std::abs(gamma(l, j, k) - gamma(l, k, j)));
    return d;
  }
};

/// Connection coefficients as a function of state, with an optional
/// analytic derivative oracle P(i,j,k,m) = d Gamma^i_{jk} / dz^m.
struct ChristoffelField {
  int dim = 0;
  ChristoffelKind kind = ChristoffelKind::CovariantLeviCivita;
  std::function<Rank3(const Vec&)> eval;
  std::function<Rank4(const Vec&)> partials;  // optional

  Christoffel operator()(const Vec& z) const { return Christoffel{eval(z), kind}; }

  Rank4 partial(const Vec& z) const {
    if (partials) return partials(z);
    Rank4 p(dim);
    Vec zp = z, zm = z;
    for (int m = 0; m < dim; ++m) {
      const double h = fd_step(z[m]);
      zp[m] = z[m] + h;
      zm[m] = z[m] - h;
      const double denom = zp[m] - zm[m];
      const Rank3 gp = eval(zp), gm = eval(zm);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int k = 0; k < dim; ++k) p(i, j, k, m) = (gp(i, j, k) - gm(i, j, k)) / denom;
      zp[m] = z[m];
      zm[m] = z[m];
    }
    return p;
  }
};

/// Levi-Civita connection of a covariant metric:
///   Gamma^l_{jk} = 1/2 g^{lr} (d_j g_{rk} + d_k g_{rj} - d_r g_{jk}).
inline Christoffel levi_civita(const MetricField& g, const Vec& z) {
  const int n = g.dim;
  const Mat gz = g(z);
  const Mat ginv = inverse(gz);  // throws on non-invertible metric
  const Rank3 dg = g.partial(z);
  Rank3 gamma(n);
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int r = 0; r < n; ++r)
          s += ginv(l, r) * (dg(r, k, j) + dg(r, j, k) - dg(j, k, r));
        gamma(l, j, k) = 0.5 * s;
      }
  return Christoffel{std::move(gamma), ChristoffelKind::CovariantLeviCivita};
}

inline ChristoffelField levi_civita_field(const MetricField& g) {
  ChristoffelField f;
  f.dim = g.dim;
  f.kind = ChristoffelKind::CovariantLeviCivita;
  f.eval = [g](const Vec& z) { return levi_civita(g, z).gamma; };
  return f;
}

/// Riemann-Christoffel tensor of an affine connection,
///   R^i_{jkl} = Gamma^i_{rk} Gamma^r_{jl} - Gamma^i_{rl} Gamma^r_{jk}
///               + d_k Gamma^i_{jl} - d_l Gamma^i_{jk},
/// fully raised with the inverse metric: R^{ijkl} = g^{jr} g^{ks} g^{lt} R^i_{rst}.
inline Rank4 riemann_from_affine(const ChristoffelField& gamma_field, const MetricField& g,
                                 const Vec& z) {
  if (gamma_field.kind != ChristoffelKind::CovariantLeviCivita)
    throw std::invalid_argument("riemann_from_affine: expects a covariant-kind connection");
  const int n = gamma_field.dim;
  const Rank3 ga = gamma_field.eval(z);
  const Rank4 dga = gamma_field.partial(z);
  Rank4 Rmixed(n);  // R^i_{jkl}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dga(i, j, l, k) - dga(i, j, k, l);
          for (int r = 0; r < n; ++r)
            s += ga(i, r, k) * ga(r, j, l) - ga(i, r, l) * ga(r, j, k);
          Rmixed(i, j, k, l) = s;
        }
  const Mat ginv = inverse(g(z));
  Rank4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int r = 0; r < n; ++r) {
            if (ginv(j, r) == 0.0) continue;
            for (int q = 0; q < n; ++q) {
              if (ginv(k, q) == 0.0) continue;
              double inner = 0;
              for (int t = 0; t < n; ++t) inner += ginv(l, t) * Rmixed(i, r, q, t);
              s += ginv(j, r) * ginv(k, q) * inner;
            }
          }
          R(i, j, k, l) = s;
        }
  return R;
}

/// Contravariant (Poisson-connection) Christoffel symbols
///   Gamma^{ij}_l = 1/2 g_{kl} [ J^{is} d_s g^{jk} - J^{ks} d_s g^{ij} + J^{js} d_s g^{ik} ]
///               + 1/2 g_{kl} [ g^{ks} d_s J^{ij} - g^{si} d_s J^{jk} - g^{sj} d_s J^{ik} ].
/// Here the metric field supplies the contravariant components g^{ij};
/// g_{kl} is their inverse.
inline Christoffel contravariant_christoffel(const PoissonField& J, const MetricField& g,
                                             const Vec& z) {
  const int n = J.dim;
  if (g.dim != n) throw std::invalid_argument("contravariant_christoffel: dimension mismatch");
  const Mat gz = g(z);
  const Mat glow = inverse(gz);
  const Mat Jz = J(z);
  const Rank3 dg = g.partial(z);  // dg(j,k,s) = d g^{jk} / dz^s
  const Rank3 dJ = J.partial(z);  // dJ(i,j,s) = d J^{ij} / dz^s
  Rank3 gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int k = 0; k < n; ++k) {
          if (glow(k, l) == 0.0) continue;
          double t = 0;
          for (int q = 0; q < n; ++q) {
            t += Jz(i, q) * dg(j, k, q) - Jz(k, q) * dg(i, j, q) + Jz(j, q) * dg(i, k, q);
            t += gz(k, q) * dJ(i, j, q) - gz(q, i) * dJ(j, k, q) - gz(q, j) * dJ(i, k, q);
          }
          s += glow(k, l) * t;
        }
        gamma(i, j, l) = 0.5 * s;
      }
  return Christoffel{std::move(gamma), ChristoffelKind::Contravariant};
}

/// Defect of the torsion identity Gamma^{ij}_k - Gamma^{ji}_k = dJ^{ij}/dz^k.
inline double contravariant_torsion_defect(const Christoffel& gamma, const PoissonField& J,
                                           const Vec& z) {
  const Rank3 dJ = J.partial(z);
  const int n = gamma.dim();
  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d = std::max(d, std::abs(gamma.gamma(i, j, k) - gamma.gamma(j, i, k) - dJ(i, j, k)));
  return d;
}

/// Defect of metric compatibility J^{is} d_s g^{jk} = g^{ks} Gamma^{ij}_s + g^{js} Gamma^{ik}_s.
inline double contravariant_compatibility_defect(const Christoffel& gamma, const PoissonField& J,
                                                 const MetricField& g, const Vec& z) {
  const int n = gamma.dim();
  const Mat Jz = J(z);
  const Mat gz = g(z);
  const Rank3 dg = g.partial(z);
  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double lhs = 0, rhs = 0;
        for (int s = 0; s < n; ++s) {
          lhs += Jz(i, s) * dg(j, k, s);
          rhs += gz(k, s) * gamma.gamma(i, j, s) + gz(j, s) * gamma.gamma(i, k, s);
        }
        d = std::max(d, std::abs(lhs - rhs));
      }
  return d;
}

/// Curvature of the contravariant Levi-Civita connection,
///   Q^{ab c}_d = Gamma^{bc}_s Gamma^{as}_d - Gamma^{ac}_s Gamma^{bs}_d
///              - (d_s J^{ab}) Gamma^{sc}_d + J^{as} d_s Gamma^{bc}_d - J^{bs} d_s Gamma^{ac}_d,
/// assembled into bracket slot order the same way the covariant route is:
/// direction slots last, argument second, output raised into the first slot,
///   R^{ijkl} = g^{si} Q^{kl j}_s.
/// (Putting the directions first instead flips the overall sign and with it
/// the sectional curvature; this arrangement gives the so(3) + euclidean
/// case Gamma = -eps/2 with R = (dd - dd)/4, positive like its space form.)
inline Rank4 contravariant_curvature(const PoissonField& J, const MetricField& g, const Vec& z) {
  const int n = J.dim;
  const Mat gz = g(z);
  const Mat Jz = J(z);
  const Rank3 dJ = J.partial(z);
  const Rank3 ga = contravariant_christoffel(J, g, z).gamma;

  // d Gamma^{ab}_c / dz^s by central differences of the christoffel map
  Rank4 dga(n);
  {
    Vec zp = z, zm = z;
    for (int s = 0; s < n; ++s) {
      const double h = fd_step(z[s]);
      zp[s] = z[s] + h;
      zm[s] = z[s] - h;
      const double denom = zp[s] - zm[s];
      const Rank3 gp = contravariant_christoffel(J, g, zp).gamma;
      const Rank3 gm = contravariant_christoffel(J, g, zm).gamma;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) dga(a, b, c, s) = (gp(a, b, c) - gm(a, b, c)) / denom;
      zp[s] = z[s];
      zm[s] = z[s];
    }
  }

  Rank4 Q(n);  // Q(a,b,c,d) with directions (a,b), argument c, output (low) d
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int r = 0; r < n; ++r) {
            s += ga(b, c, r) * ga(a, r, d) - ga(a, c, r) * ga(b, r, d);
            s -= dJ(a, b, r) * ga(r, c, d);
            s += Jz(a, r) * dga(b, c, d, r) - Jz(b, r) * dga(a, c, d, r);
          }
          Q(a, b, c, d) = s;
        }

  Rank4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int r = 0; r < n; ++r) s += gz(r, i) * Q(k, l, j, r);
          R(i, j, k, l) = s;
        }
  return R;
}

inline FourBracketField contravariant_curvature_field(const PoissonField& J, const MetricField& g) {
  FourBracketField f;
  f.dim = J.dim;
  f.eval = [J, g](const Vec& z) { return contravariant_curvature(J, g, z); };
  f.constant = false;
  f.algebraic = true;  // curvature of a torsion-free metric connection
  f.psd = false;
  return f;
}

/// GENERIC linearization: Ghat^{ij} = Y^i dS_j / |dS|^2, so Ghat dS = Y.
/// Fails near vanishing dS, where the construction degenerates.
inline Mat generic_linearize(const std::function<Vec(const Vec&)>& Y, const ScalarField& S,
                             const Vec& z) {
  const Vec gS = S.gradient(z);
  const double n2 = dot(gS, gS);
  if (n2 < 1e-24)
    throw std::domain_error("generic_linearize: vanishing entropy gradient");
  const Vec y = Y(z);
  if (y.size() != gS.size()) throw std::invalid_argument("generic_linearize: dimension mismatch");
  const int n = static_cast<int>(y.size());
  Mat G(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = y[i] * gS[j] / n2;
  return G;
}

/// Pointwise symmetrization preserving the action on dS.  Rotates to an
/// orthonormal frame whose first axis is dS/|dS| (Householder reflection),
/// copies the lower triangle across the diagonal there, and rotates back.
inline Mat generic_symmetrize(const Mat& Ghat, const ScalarField& S, const Vec& z) {
  const int n = Ghat.dim();
  const Vec gS = S.gradient(z);
  const double nrm = norm2(gS);
  if (nrm < 1e-12)
    throw std::domain_error("generic_symmetrize: vanishing entropy gradient");

  // Householder Q (symmetric, orthogonal) with Q u = -sign(u1) e1
  Vec v = scaled(1.0 / nrm, gS);
  const double sgn = v[0] >= 0.0 ? 1.0 : -1.0;
  v[0] += sgn;
  const double vv = dot(v, v);
  Mat Q = Mat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) -= 2.0 * v[i] * v[j] / vv;

  const Mat Gr = Q * Ghat * Q;  // contravariant transform, Q symmetric
  Mat Gs(n, 0.0, SymmetryTag::Symmetric);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Gs(i, j) = (i >= j) ? Gr(i, j) : Gr(j, i);
  Mat G = Q * Gs * Q;
  G.set_tag(SymmetryTag::Symmetric);
  return G;
}

}  // namespace metriplex
