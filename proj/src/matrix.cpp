#include "anosov/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace anosov {

namespace {

// LU with partial pivoting; returns false if a pivot is exactly zero.
bool lu_decompose(Matrix& a, std::vector<int>& perm, int& sign) {
  const int n = a.rows();
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const double f = a(i, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

}  // namespace

double determinant(const Matrix& a) {
  if (!a.square()) throw DimMismatch("determinant needs a square matrix");
  if (!a.is_finite()) throw NonFinite("determinant of non-finite matrix");
  Matrix lu = a;
  std::vector<int> perm;
  int sign = 0;
  if (!lu_decompose(lu, perm, sign)) return 0.0;
  double det = sign;
  for (int i = 0; i < a.rows(); ++i) det *= lu(i, i);
  return det;
}

double log_abs_determinant(const Matrix& a, int* sign) {
  if (!a.square()) throw DimMismatch("determinant needs a square matrix");
  if (!a.is_finite()) throw NonFinite("determinant of non-finite matrix");
  Matrix lu = a;
  std::vector<int> perm;
  int s = 0;
  if (!lu_decompose(lu, perm, s)) {
    if (sign) *sign = 0;
    return -HUGE_VAL;
  }
  double logdet = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    const double p = lu(i, i);
    if (p == 0.0) {
      if (sign) *sign = 0;
      return -HUGE_VAL;
    }
    if (p < 0.0) s = -s;
    logdet += std::log(std::abs(p));
  }
  if (sign) *sign = s;
  return logdet;
}

Matrix inverse(const Matrix& a, double svd_tol) {
  if (!a.square()) throw DimMismatch("inverse needs a square matrix");
  if (!a.is_finite()) throw NonFinite("inverse of non-finite matrix");
  const int n = a.rows();
  Matrix lu = a;
  std::vector<int> perm;
  int sign = 0;
  if (!lu_decompose(lu, perm, sign)) throw SingularInput("matrix is singular");
  for (int i = 0; i < n; ++i) {
    if (std::abs(lu(i, i)) <= svd_tol) throw SingularInput("matrix is numerically singular");
  }
  Matrix inv(n, n);
  std::vector<double> col(n), x(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    // forward substitution (unit lower triangle)
    for (int i = 0; i < n; ++i) {
      double s = col[i];
      for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    // back substitution
    for (int i = n - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
      x[i] = s / lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, c) = x[i];
  }
  return inv;
}

Matrix make_unimodular(const Matrix& a, double det_tol) {
  if (!a.square()) throw DimMismatch("make_unimodular needs a square matrix");
  const double det = determinant(a);
  if (!(det > 0.0)) throw SingularInput("make_unimodular requires det > 0");
  const int d = a.rows();
  Matrix u = a.scaled(std::pow(det, -1.0 / d));
  const double check = determinant(u);
  if (std::abs(check - 1.0) > det_tol) throw NotUnimodular("normalization failed to reach det 1");
  return u;
}

ScaledMatrix ScaledMatrix::power(long n) const {
  if (n < 0) return inverse_scaled().power(-n);
  ScaledMatrix acc = ScaledMatrix{Matrix::identity(dim()), 0.0};
  acc.m = acc.m.scaled(1.0 / acc.m.frobenius_norm());
  acc.log_scale = 0.5 * std::log(static_cast<double>(dim()));
  ScaledMatrix base = *this;
  while (n > 0) {
    if (n & 1) acc = acc.times(base);
    base = base.times(base);
    n >>= 1;
  }
  return acc;
}

}  // namespace anosov
