#pragma once

#include <vector>

#include "anosov/matrix.hpp"

namespace anosov {

// Thin result of A = U * diag(sigma) * V^T with sigma sorted descending.
// U is rows x min(rows, cols) unless `full_u` was requested, V is cols x cols.
struct SVDResult {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

// One-sided Jacobi SVD. Chosen over Golub-Kahan for its relative accuracy
// on the small singular values of the modest matrices this library sees.
SVDResult svd(const Matrix& a);

double largest_singular_value(const Matrix& a);
double smallest_singular_value(const Matrix& a);

// Orthonormal basis whose leading k columns span the leading k columns of
// `a` for every k (Householder QR with R_ii >= 0). Throws SingularInput if
// a diagonal entry of R falls below `tol` times the largest column norm.
Matrix orthonormal_frame(const Matrix& a, double tol = 1e-12);

// Same span guarantee, but only the leading `required_cols` columns must be
// numerically independent; trailing columns that collapse (e.g. under an
// extreme power of a proximal element) are replaced by an arbitrary
// orthonormal completion. Flags only give meaning to the pivot blocks, so
// the completion is semantically free.
Matrix flag_frame(const Matrix& a, int required_cols, double tol = 1e-12);

// Largest principal angle between the column spans of two orthonormal
// blocks of equal dimension.
double largest_principal_angle(const Matrix& q1, const Matrix& q2);

}  // namespace anosov
