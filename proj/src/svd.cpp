#include "anosov/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace anosov {

namespace {

constexpr int kMaxSweeps = 60;

// Hestenes one-sided Jacobi on the columns of w (rows >= cols assumed),
// accumulating the right rotations into v.
void jacobi_orthogonalize(Matrix& w, Matrix& v) {
  const int rows = w.rows();
  const int cols = w.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < cols - 1; ++p) {
      for (int q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < rows; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (int i = 0; i < cols; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

// Extends the nonzero columns of u to a full orthonormal set by projecting
// out standard basis vectors.
void complete_basis(Matrix& u, int from_col) {
  const int rows = u.rows();
  const int cols = u.cols();
  int next = from_col;
  for (int e = 0; e < rows && next < cols; ++e) {
    std::vector<double> cand(rows, 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < next; ++j) {
        double dot = 0.0;
        for (int i = 0; i < rows; ++i) dot += cand[i] * u(i, j);
        for (int i = 0; i < rows; ++i) cand[i] -= dot * u(i, j);
      }
    }
    double n = 0.0;
    for (double x : cand) n += x * x;
    n = std::sqrt(n);
    if (n < 0.5) continue;  // basis vector nearly in span, try the next one
    for (int i = 0; i < rows; ++i) u(i, next) = cand[i] / n;
    ++next;
  }
}

}  // namespace

namespace {

// QR with column pivoting: a * P = Q * R. Returns full Q; R overwrites a;
// perm[j] is the original index of working column j. The pivoting grades
// the rows of R, which is what lets the Jacobi stage reach high relative
// accuracy on ill-conditioned input.
void qr_column_pivot(Matrix& a, Matrix& q, std::vector<int>& perm) {
  const int rows = a.rows();
  const int cols = a.cols();
  q = Matrix::identity(rows);
  perm.resize(cols);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < cols && k < rows; ++k) {
    int best = k;
    double best_norm = -1.0;
    for (int c = k; c < cols; ++c) {
      double n = 0.0;
      for (int i = k; i < rows; ++i) n += a(i, c) * a(i, c);
      if (n > best_norm) {
        best_norm = n;
        best = c;
      }
    }
    if (best != k) {
      for (int i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best));
      std::swap(perm[k], perm[best]);
    }
    double norm = std::sqrt(std::max(best_norm, 0.0));
    if (norm == 0.0) continue;
    const double alpha = (a(k, k) >= 0.0) ? -norm : norm;
    std::vector<double> vh(rows, 0.0);
    vh[k] = a(k, k) - alpha;
    for (int i = k + 1; i < rows; ++i) vh[i] = a(i, k);
    double vn = 0.0;
    for (int i = k; i < rows; ++i) vn += vh[i] * vh[i];
    if (vn == 0.0) continue;
    for (int j = k; j < cols; ++j) {
      double dot = 0.0;
      for (int i = k; i < rows; ++i) dot += vh[i] * a(i, j);
      const double f = 2.0 * dot / vn;
      for (int i = k; i < rows; ++i) a(i, j) -= f * vh[i];
    }
    for (int j = 0; j < rows; ++j) {
      double dot = 0.0;
      for (int i = k; i < rows; ++i) dot += vh[i] * q(j, i);
      const double f = 2.0 * dot / vn;
      for (int i = k; i < rows; ++i) q(j, i) -= f * vh[i];
    }
    for (int i = k + 1; i < rows; ++i) a(i, k) = 0.0;
  }
}

}  // namespace

SVDResult svd(const Matrix& a) {
  if (!a.is_finite()) throw NonFinite("svd of non-finite matrix");
  if (a.cols() > a.rows()) {
    SVDResult t = svd(a.transpose());
    return SVDResult{t.v, t.sigma, t.u};
  }
  const int rows = a.rows();
  const int cols = a.cols();

  // Preconditioned one-sided Jacobi: A P = Q R, then Jacobi on R1^T where
  // R1 is the leading cols x cols block. R1^T = U~ S v^T gives
  // A = (Q1 v) S (P U~)^T.
  Matrix r = a;
  Matrix q;
  std::vector<int> perm;
  qr_column_pivot(r, q, perm);

  Matrix w(cols, cols);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j <= i && j < cols; ++j) w(i, j) = r(j, i);
  Matrix v = Matrix::identity(cols);
  jacobi_orthogonalize(w, v);

  std::vector<double> sigma(cols);
  for (int j = 0; j < cols; ++j) {
    double n = 0.0;
    for (int i = 0; i < cols; ++i) n += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(n);
  }
  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return sigma[i] > sigma[j]; });

  // Normalized, sorted left factor of R1^T; zero-sigma columns completed
  // to a full orthonormal set.
  Matrix utilde(cols, cols);
  std::vector<double> sorted_sigma(cols);
  const double tiny = std::numeric_limits<double>::min();
  int nonzero = 0;
  for (int j = 0; j < cols; ++j) {
    const int src = order[j];
    sorted_sigma[j] = sigma[src];
    if (sigma[src] > tiny) {
      for (int i = 0; i < cols; ++i) utilde(i, j) = w(i, src) / sigma[src];
      nonzero = j + 1;
    }
  }
  if (nonzero < cols) complete_basis(utilde, nonzero);

  SVDResult out;
  out.sigma = std::move(sorted_sigma);
  out.u = Matrix(rows, cols);
  out.v = Matrix(cols, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int k = 0; k < cols; ++k) s += q(i, k) * v(k, order[j]);
      out.u(i, j) = s;
    }
  }
  for (int k = 0; k < cols; ++k) {
    for (int j = 0; j < cols; ++j) out.v(perm[k], j) = utilde(k, j);
  }
  return out;
}

double largest_singular_value(const Matrix& a) { return svd(a).sigma.front(); }

double smallest_singular_value(const Matrix& a) { return svd(a).sigma.back(); }

Matrix orthonormal_frame(const Matrix& a, double tol) {
  if (!a.square()) throw DimMismatch("orthonormal_frame needs a square matrix");
  if (!a.is_finite()) throw NonFinite("orthonormal_frame of non-finite matrix");
  const int n = a.rows();
  Matrix r = a;
  Matrix q = Matrix::identity(n);
  double scale = a.max_abs();
  if (scale == 0.0) throw SingularInput("zero matrix has no frame");
  // Householder reflections applied to r, accumulated into q.
  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm <= tol * scale) throw SingularInput("rank-deficient frame input");
    const double alpha = (r(k, k) >= 0.0) ? -norm : norm;
    std::vector<double> vh(n, 0.0);
    vh[k] = r(k, k) - alpha;
    for (int i = k + 1; i < n; ++i) vh[i] = r(i, k);
    double vn = 0.0;
    for (int i = k; i < n; ++i) vn += vh[i] * vh[i];
    if (vn == 0.0) continue;
    for (int j = k; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += vh[i] * r(i, j);
      const double f = 2.0 * dot / vn;
      for (int i = k; i < n; ++i) r(i, j) -= f * vh[i];
    }
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += vh[i] * q(j, i);
      const double f = 2.0 * dot / vn;
      for (int i = k; i < n; ++i) q(j, i) -= f * vh[i];
    }
  }
  // Fix signs so the implicit R has a nonnegative diagonal; frames become
  // deterministic functions of the input.
  for (int k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) {
      for (int i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
  }
  return q;
}

Matrix flag_frame(const Matrix& a, int required_cols, double tol) {
  if (!a.square()) throw DimMismatch("flag_frame needs a square matrix");
  if (!a.is_finite()) throw NonFinite("flag_frame of non-finite matrix");
  const int n = a.rows();
  Matrix q(n, n);
  // Modified Gram-Schmidt with one reorthogonalization pass; column scales
  // vary wildly for long products, so each residual is judged against its
  // own column norm.
  for (int j = 0; j < n; ++j) {
    std::vector<double> v(n);
    double col_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      v[i] = a(i, j);
      col_norm += v[i] * v[i];
    }
    col_norm = std::sqrt(col_norm);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += v[i] * q(i, k);
        for (int i = 0; i < n; ++i) v[i] -= dot * q(i, k);
      }
    }
    double res = 0.0;
    for (double x : v) res += x * x;
    res = std::sqrt(res);
    if (res > tol * std::max(col_norm, 1e-300)) {
      for (int i = 0; i < n; ++i) q(i, j) = v[i] / res;
      continue;
    }
    if (j < required_cols) throw SingularInput("pivot block collapsed in flag_frame");
    // Deterministic completion from the standard basis.
    bool placed = false;
    for (int e = 0; e < n && !placed; ++e) {
      std::vector<double> cand(n, 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < j; ++k) {
          double dot = 0.0;
          for (int i = 0; i < n; ++i) dot += cand[i] * q(i, k);
          for (int i = 0; i < n; ++i) cand[i] -= dot * q(i, k);
        }
      }
      double cn = 0.0;
      for (double x : cand) cn += x * x;
      cn = std::sqrt(cn);
      if (cn < 0.5) continue;
      for (int i = 0; i < n; ++i) q(i, j) = cand[i] / cn;
      placed = true;
    }
    if (!placed) throw SingularInput("could not complete the flag frame");
  }
  return q;
}

double largest_principal_angle(const Matrix& q1, const Matrix& q2) {
  if (q1.rows() != q2.rows() || q1.cols() != q2.cols()) throw DimMismatch("principal angles need equal shapes");
  // Cosine from q1^T q2, sine from the complement projection; combining the
  // two keeps full precision at both ends of [0, pi/2].
  const double c = std::clamp(svd(q1.transpose() * q2).sigma.back(), 0.0, 1.0);
  Matrix residual = q2 - q1 * (q1.transpose() * q2);
  const double s = std::clamp(svd(residual).sigma.front(), 0.0, 1.0);
  return std::atan2(s, c);
}

}  // namespace anosov
