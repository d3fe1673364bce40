/// \file
/// Dense small-dimension containers (vectors, square matrices, rank-3/4
/// tensors) and the little linear algebra the bracket machinery needs.
/// Everything is value-semantic and immutable-friendly: operations return
/// new values, nothing mutates shared state.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace metriplex {

using Vec = std::vector<double>;

/// Phase-space points and covector components are both plain coordinate
/// tuples in a chart; the distinction is carried by the call site.
using PhaseState = Vec;
using Covector = Vec;

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
  Vec r(y);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += alpha * x[i];
  return r;
}

inline Vec scaled(double alpha, const Vec& x) {
  Vec r(x);
  for (double& v : r) v *= alpha;
  return r;
}

inline Vec unit(int n, int i) {
  Vec e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

enum class SymmetryTag { None, Symmetric, Antisymmetric };

/// Square N x N matrix with an optional symmetry tag.  The tag is a claim
/// made by the producer; `symmetry_defect` measures how true it is.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n, double fill = 0.0, SymmetryTag tag = SymmetryTag::None)
      : n_(n), a_(static_cast<std::size_t>(n) * n, fill), tag_(tag) {
    if (n < 1) throw std::invalid_argument("Mat: dimension must be >= 1");
  }

  static Mat identity(int n) {
    Mat m(n, 0.0, SymmetryTag::Symmetric);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }
  SymmetryTag tag() const { return tag_; }
  void set_tag(SymmetryTag t) { tag_ = t; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const { return a_; }

  /// Max violation of the tagged symmetry; 0 for untagged matrices.
  double symmetry_defect() const {
    double d = 0;
    if (tag_ == SymmetryTag::None) return 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double v = (tag_ == SymmetryTag::Antisymmetric) ? (*this)(i, j) + (*this)(j, i)
                                                        : (*this)(i, j) - (*this)(j, i);
        d = std::max(d, std::abs(v));
      }
    return d;
  }

  Vec apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("Mat::apply: dimension mismatch");
    Vec y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      double s = 0;
      for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Mat transpose() const {
    Mat t(n_, 0.0, tag_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Mat::operator*: dimension mismatch");
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    Mat r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    Mat r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Mat scaled_by(double s) const {
    Mat r(*this);
    for (double& v : r.a_) v *= s;
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
  SymmetryTag tag_ = SymmetryTag::None;
};

/// Quadratic form x^T A y.  Terms are grouped per unordered index pair and
/// the vector product is formed first, so for an exactly antisymmetric A
/// and x == y the two members of each pair are exact negatives and the
/// cancellation is bit-exact, not merely small.
inline double bilinear(const Vec& x, const Mat& A, const Vec& y) {
  const int n = A.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("bilinear: dimension mismatch");
  double s = 0;
  for (int i = 0; i < n; ++i) {
    s += A(i, i) * (x[i] * y[i]);
    for (int j = i + 1; j < n; ++j) s += A(i, j) * (x[i] * y[j]) + A(j, i) * (x[j] * y[i]);
  }
  return s;
}

/// N x N x N array, entries T(i,j,k).
class Rank3 {
 public:
  Rank3() = default;
  explicit Rank3(int n, double fill = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * n * n, fill) {
    if (n < 1) throw std::invalid_argument("Rank3: dimension must be >= 1");
  }
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  double operator()(int i, int j, int k) const {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Dense N^4 array indexed (i,j,k,l).  Sized for small N; the field-theory
/// demos never materialize one of these, they work in operator form.
class Rank4 {
 public:
  Rank4() = default;
  explicit Rank4(int n, double fill = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * n * n * n, fill) {
    if (n < 1) throw std::invalid_argument("Rank4: dimension must be >= 1");
  }
  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) {
    return a_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return a_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  Rank4 operator+(const Rank4& o) const {
    Rank4 r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Rank4 operator-(const Rank4& o) const {
    Rank4 r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Rank4 scaled_by(double s) const {
    Rank4 r(*this);
    for (double& v : r.a_) v *= s;
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  bool finite() const {
    for (double v : a_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Gauss-Jordan inverse with partial pivoting.  Throws on (numerically)
/// singular input; fine for the small dimensions this library targets.
inline Mat inverse(const Mat& m, double pivot_tol = 0.0) {
  const int n = m.dim();
  Mat a(m);
  Mat inv = Mat::identity(n);
  if (pivot_tol <= 0.0) pivot_tol = 1e-13 * std::max(1.0, m.max_abs());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= pivot_tol)
      throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  inv.set_tag(m.tag() == SymmetryTag::Symmetric ? SymmetryTag::Symmetric : SymmetryTag::None);
  return inv;
}

/// Cholesky test for positive definiteness (no factor returned).
inline bool cholesky_succeeds(const Mat& m) {
  const int n = m.dim();
  Mat l(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return true;
}

inline Mat symmetrized(const Mat& m) {
  Mat r(m.dim(), 0.0, SymmetryTag::Symmetric);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
  return r;
}

inline Mat antisymmetrized(const Mat& m) {
  Mat r(m.dim(), 0.0, SymmetryTag::Antisymmetric);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = 0.5 * (m(i, j) - m(j, i));
  return r;
}

/// Deterministic sampling helpers.  All randomized checks in the library go
/// through a seeded engine so reports are reproducible.
inline std::mt19937_64 seeded_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vec random_vec(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace metriplex
