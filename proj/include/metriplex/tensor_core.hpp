/// \file
/// Index-symmetry algebra for rank-4 tensors.
///
/// Slot convention used throughout: a 4-bracket (f,k;g,n) contracts the
/// tensor as R(i,j,k,l) df_i dk_j dg_k dn_l, i.e. the first argument pair
/// takes index slots (i,j) and the second pair takes (k,l).

#pragma once

#include <stdexcept>
#include <string>

#include "metriplex/dense.hpp"

namespace metriplex {

/// Default absolute tolerance for symmetry-tag and precondition checks.
inline constexpr double kDefaultAtol = 1e-10;

/// Full contraction R(i,j,k,l) a_i b_j c_k d_l.
inline double contract4(const Rank4& R, const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const int n = R.dim();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n || static_cast<int>(d.size()) != n)
    throw std::invalid_argument("contract4: dimension mismatch");
  double s = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0.0) continue;
      const double ab = a[i] * b[j];
      for (int k = 0; k < n; ++k) {
        if (c[k] == 0.0) continue;
        double inner = 0;
        for (int l = 0; l < n; ++l) inner += R(i, j, k, l) * d[l];
        s += ab * c[k] * inner;
      }
    }
  }
  return s;
}

/// Measured violations of the four curvature-type identities:
///   d12     antisymmetry in the first pair,   R(ijkl) = -R(jikl)
///   d34     antisymmetry in the second pair,  R(ijkl) = -R(ijlk)
///   dpair   pair interchange,                 R(ijkl) =  R(klij)
///   dcyclic first Bianchi / cyclic identity,  R(ijkl) + R(iklj) + R(iljk) = 0
struct SymmetryDefects {
  double d12 = 0;
  double d34 = 0;
  double dpair = 0;
  double dcyclic = 0;

  double max_minimal() const { return std::max(d12, std::max(d34, dpair)); }
  double max_all() const { return std::max(max_minimal(), dcyclic); }
};

inline SymmetryDefects symmetry_defects(const Rank4& R) {
  const int n = R.dim();
  SymmetryDefects d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = R(i, j, k, l);
          d.d12 = std::max(d.d12, std::abs(r + R(j, i, k, l)));
          d.d34 = std::max(d.d34, std::abs(r + R(i, j, l, k)));
          d.dpair = std::max(d.dpair, std::abs(r - R(k, l, i, j)));
          d.dcyclic = std::max(d.dcyclic, std::abs(r + R(i, k, l, j) + R(i, l, j, k)));
        }
  return d;
}

/// Cyclic part T(ijkl) = (A(ijkl) + A(iklj) + A(iljk)) / 3.
///
/// For inputs carrying the three minimal symmetries, T is totally
/// antisymmetric in all four slots (hence identically zero when dim <= 3).
/// Inputs violating the precondition are rejected by name.
inline Rank4 cyclic_part(const Rank4& A, double atol = kDefaultAtol) {
  const SymmetryDefects d = symmetry_defects(A);
  const double scale = std::max(1.0, A.max_abs());
  if (d.d12 > atol * scale)
    throw std::invalid_argument("cyclic_part: input violates first-pair antisymmetry, defect " +
                                std::to_string(d.d12));
  if (d.d34 > atol * scale)
    throw std::invalid_argument("cyclic_part: input violates second-pair antisymmetry, defect " +
                                std::to_string(d.d34));
  if (d.dpair > atol * scale)
    throw std::invalid_argument("cyclic_part: input violates pair-interchange symmetry, defect " +
                                std::to_string(d.dpair));
  const int n = A.dim();
  Rank4 T(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          T(i, j, k, l) = (A(i, j, k, l) + A(i, k, l, j) + A(i, l, j, k)) / 3.0;
  return T;
}

}  // namespace metriplex
