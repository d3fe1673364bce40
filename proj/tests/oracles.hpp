// Brute-force reference computations used to freeze expected values.  These
// deliberately avoid the library's optimized paths: plain quadruple loops,
// explicit epsilon symbols, and textbook formulas written out term by term.

#pragma once

#include <cmath>
#include <random>

#include "metriplex/dense.hpp"
#include "metriplex/fields.hpp"

namespace oracle {

using metriplex::Mat;
using metriplex::Rank3;
using metriplex::Rank4;
using metriplex::Vec;

inline double eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  // parity of the permutation (i,j,k) of (0,1,2)
  const int swaps = (i > j) + (i > k) + (j > k);
  return (swaps % 2 == 0) ? 1.0 : -1.0;
}

// plain quadruple-sum contraction, accumulation order l,k,j,i
inline double contract4_brute(const Rank4& R, const Vec& a, const Vec& b, const Vec& c,
                              const Vec& d) {
  const int n = R.dim();
  double s = 0;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) s += R(i, j, k, l) * a[i] * b[j] * c[k] * d[l];
  return s;
}

// R^{ijkl} = delta^{ik} delta^{jl} - delta^{il} delta^{jk}
inline Rank4 delta_pair_tensor(int n) {
  Rank4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          R(i, j, k, l) = (i == k && j == l ? 1.0 : 0.0) - (i == l && j == k ? 1.0 : 0.0);
  return R;
}

// minimal-metriplectic test tensor with nonzero cyclic part (needs n >= 4):
// A^{ijkl} = P^{ij} Q^{kl} + Q^{ij} P^{kl} for antisymmetric P, Q
inline Rank4 pair_product_tensor(const Mat& P, const Mat& Q) {
  const int n = P.dim();
  Rank4 A(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) A(i, j, k, l) = P(i, j) * Q(k, l) + Q(i, j) * P(k, l);
  return A;
}

inline Mat random_antisymmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat B(n, 0.0, metriplex::SymmetryTag::Antisymmetric);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = u(rng);
      B(i, j) = v;
      B(j, i) = -v;
    }
  return B;
}

inline Mat random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat B(n, 0.0, metriplex::SymmetryTag::Symmetric);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = u(rng);
      B(i, j) = v;
      B(j, i) = v;
    }
  return B;
}

inline Mat random_spd(std::mt19937_64& rng, int n, double shift = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat B(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = u(rng);
  Mat S = B * B.transpose();
  for (int i = 0; i < n; ++i) S(i, i) += shift;
  S.set_tag(metriplex::SymmetryTag::Symmetric);
  return S;
}

// Cartan-Killing-metric curvature written out from the closed form
//   R^{lkij} = 1/4 c^{jk}_a c^{ial} - 1/4 c^{ik}_a c^{jal} + 1/2 c^{ij}_a c^{kal}
// with the last structure-constant index raised by g_CK.
inline Rank4 ck_curvature_formula(const metriplex::StructureConstants& c, const Mat& gck) {
  const int n = c.dim();
  Rank3 cr(n);  // c^{ia l} = c^{ia}_s g_CK^{sl}
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int q = 0; q < n; ++q) s += c(i, a, q) * gck(q, l);
        cr(i, a, l) = s;
      }
  Rank4 R(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int a = 0; a < n; ++a)
            s += 0.25 * c(j, k, a) * cr(i, a, l) - 0.25 * c(i, k, a) * cr(j, a, l) +
                 0.5 * c(i, j, a) * cr(k, a, l);
          R(l, k, i, j) = s;
        }
  return R;
}

}  // namespace oracle
