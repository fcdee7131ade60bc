#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov {

// Numerical tolerances shared across the library. All strictly positive;
// the defaults are sized for double precision at d <= 8 and word length <= 14.
struct Tolerances {
  double svd_tol = 1e-12;       // smallest admissible singular value
  double det_tol = 1e-9;        // unimodularity slack
  double sum_tol = 1e-9;        // Cartan components must sum to ~0
  double recompose_tol = 1e-8;  // k1 * exp(a) * k2 reconstruction error
  double rank_tol = 1e-7;       // numerical rank decisions
  double angle_tol = 1e-7;      // orthonormality of frames
};

// Dense row-major matrix of doubles. Everything here is small (d <= 8 in
// practice), so the implementation favors clarity over blocking tricks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  // Rows given as an initializer list of initializer lists.
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw DimMismatch("ragged initializer");
      for (double x : r) a_.push_back(x);
    }
  }

  static Matrix identity(int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimMismatch("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Matrix scaled(double s) const {
    Matrix r = *this;
    for (double& x : r.a_) x *= s;
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (double x : a_) s = std::max(s, std::abs(x));
    return s;
  }

  bool is_finite() const {
    for (double x : a_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

  // Columns [c0, c1) as a rows x (c1-c0) matrix.
  Matrix columns(int c0, int c1) const {
    Matrix r(rows_, c1 - c0);
    for (int i = 0; i < rows_; ++i)
      for (int j = c0; j < c1; ++j) r(i, j - c0) = (*this)(i, j);
    return r;
  }

  // Horizontal concatenation.
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimMismatch("hcat row mismatch");
    Matrix r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
      for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimMismatch("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

double determinant(const Matrix& a);
// log |det a| plus the sign of det a (0 for an exactly singular matrix);
// stays finite where the determinant itself would under- or overflow.
double log_abs_determinant(const Matrix& a, int* sign = nullptr);
Matrix inverse(const Matrix& a, double svd_tol = 1e-12);

// Rescales a square matrix with positive determinant to determinant one.
// Throws SingularInput when det <= 0 or the input is too close to singular.
Matrix make_unimodular(const Matrix& a, double det_tol = 1e-9);

// A square matrix stored as exp(log_scale) * m with ||m||_F = 1. Word
// products in free groups grow like e^{c len}; the split representation
// keeps entries representable at any word length.
struct ScaledMatrix {
  Matrix m;
  double log_scale = 0.0;

  static ScaledMatrix from(const Matrix& a) {
    if (!a.is_finite()) throw NonFinite("matrix has non-finite entries");
    const double n = a.frobenius_norm();
    if (n == 0.0) throw SingularInput("zero matrix");
    return ScaledMatrix{a.scaled(1.0 / n), std::log(n)};
  }

  int dim() const { return m.rows(); }

  ScaledMatrix times(const ScaledMatrix& o) const {
    Matrix p = m * o.m;
    const double n = p.frobenius_norm();
    if (n == 0.0 || !std::isfinite(n)) throw SingularInput("degenerate product");
    return ScaledMatrix{p.scaled(1.0 / n), log_scale + o.log_scale + std::log(n)};
  }

  ScaledMatrix inverse_scaled(double svd_tol = 1e-12) const {
    Matrix inv = ::anosov::inverse(m, svd_tol * std::exp(-log_scale));
    const double n = inv.frobenius_norm();
    return ScaledMatrix{inv.scaled(1.0 / n), -log_scale + std::log(n)};
  }

  ScaledMatrix power(long n) const;

  // Dense form; overflows for |log_scale| beyond ~700.
  Matrix dense() const { return m.scaled(std::exp(log_scale)); }
};

}  // namespace anosov
