/// \file
/// Bracket evaluations: Poisson bracket, metriplectic 4-bracket, its
/// 2-bracket reduction and G-metric, the KM tensor, double
/// brackets, and sectional curvature.  All are pointwise pure functions.

#pragma once

#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"
#include "metriplex/tensor_core.hpp"

namespace metriplex {

/// {f,g}(z) = df_i J^{ij} dg_j
inline double poisson_bracket(const PoissonField& J, const ScalarField& f, const ScalarField& g,
                              const Vec& z) {
  return bilinear(f.gradient(z), J(z), g.gradient(z));
}

/// (f,k;g,n)(z) = R^{ijkl} df_i dk_j dg_k dn_l
inline double four_bracket(const FourBracketField& R, const ScalarField& f, const ScalarField& k,
                           const ScalarField& g, const ScalarField& n, const Vec& z) {
  return contract4(R(z), f.gradient(z), k.gradient(z), g.gradient(z), n.gradient(z));
}

/// G^{ik} = R^{ijkl} dH_j dH_l from a tensor value and a gradient.
/// Symmetric by pair interchange; annihilates dH by the pair antisymmetries.
inline Mat g_metric_from(const Rank4& R, const Vec& gradH) {
  const int n = R.dim();
  if (static_cast<int>(gradH.size()) != n)
    throw std::invalid_argument("g_metric_from: dimension mismatch");
  Mat G(n, 0.0, SymmetryTag::Symmetric);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) {
        if (gradH[j] == 0.0) continue;
        double inner = 0;
        for (int l = 0; l < n; ++l) inner += R(i, j, k, l) * gradH[l];
        s += gradH[j] * inner;
      }
      G(i, k) = s;
    }
  return symmetrized(G);
}

inline Mat g_metric(const FourBracketField& R, const ScalarField& H, const Vec& z) {
  return g_metric_from(R(z), H.gradient(z));
}

/// (f,g)_H = (f,H;g,H) = df . G . dg
inline double two_bracket(const FourBracketField& R, const ScalarField& H, const ScalarField& f,
                          const ScalarField& g, const Vec& z) {
  const Mat G = g_metric(R, H, z);
  return bilinear(f.gradient(z), G, g.gradient(z));
}

/// J_KM^{ij} = R^{ijkl} dS_k dH_l, antisymmetrized exactly so the H-H
/// contraction cancels bit-exactly.
inline Mat km_tensor_from(const Rank4& R, const Vec& gradS, const Vec& gradH) {
  const int n = R.dim();
  Mat M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) {
        if (gradS[k] == 0.0) continue;
        double inner = 0;
        for (int l = 0; l < n; ++l) inner += R(i, j, k, l) * gradH[l];
        s += gradS[k] * inner;
      }
      M(i, j) = s;
    }
  return antisymmetrized(M);
}

inline Mat km_tensor(const FourBracketField& R, const ScalarField& S, const ScalarField& H,
                     const Vec& z) {
  return km_tensor_from(R(z), S.gradient(z), H.gradient(z));
}

/// [f,g]_S = (f,g;S,H)
inline double km_bracket(const FourBracketField& R, const ScalarField& S, const ScalarField& H,
                         const ScalarField& f, const ScalarField& g, const Vec& z) {
  return bilinear(f.gradient(z), km_tensor(R, S, H, z), g.gradient(z));
}

/// D^{ij} = J^{ik} g_{kl} J^{jl}; PSD whenever g is, and it annihilates
/// Casimir gradients of J.
inline Mat double_bracket_tensor_from(const Mat& J, const Mat& g) {
  const int n = J.dim();
  if (g.dim() != n) throw std::invalid_argument("double_bracket_tensor: dimension mismatch");
  const Mat D = J * g * J.transpose();
  return symmetrized(D);
}

inline Mat double_bracket_tensor(const PoissonField& J, const Mat& g, const Vec& z) {
  return double_bracket_tensor_from(J(z), g);
}

/// Unnormalized contravariant sectional curvature K(a,b) = R(a,b,a,b).
inline double sectional_curvature(const FourBracketField& R, const Vec& a, const Vec& b,
                                  const Vec& z) {
  return contract4(R(z), a, b, a, b);
}

inline double sectional_curvature_from(const Rank4& R, const Vec& a, const Vec& b) {
  return contract4(R, a, b, a, b);
}

}  // namespace metriplex
