#pragma once

#include <vector>

#include "anosov/face.hpp"
#include "anosov/matrix.hpp"

namespace anosov {

// Sorted (non-increasing) vector of log singular values. For unimodular
// input the components sum to zero; this is the vector-valued distance
// from the basepoint to g * basepoint, valued in the euclidean Weyl chamber.
struct CartanVector {
  std::vector<double> components;

  explicit CartanVector(std::vector<double> c);

  int dim() const { return static_cast<int>(components.size()); }
  double sum() const;
  double norm() const;  // euclidean norm
  bool is_unimodular(double sum_tol) const { return std::abs(sum()) <= sum_tol; }
};

struct KAKDecomposition {
  Matrix k1;
  CartanVector a;
  Matrix k2;
};

// Log singular values of g, sorted non-increasing.
CartanVector cartan_projection(const Matrix& g, const Tolerances& tol = Tolerances{});
// Scaled overload for long word products; assumes det = 1 and stays
// accurate at any word length (compound-matrix route).
CartanVector cartan_projection(const ScaledMatrix& g, const Tolerances& tol = Tolerances{});

// g = k1 * exp(diag(a)) * k2 with k1, k2 orthogonal.
KAKDecomposition kak(const Matrix& g, const Tolerances& tol = Tolerances{});

// Simple-root values v_i - v_{i+1} for the pivots of the face, ascending
// pivot order. Nonnegative since v is sorted.
std::vector<double> root_gaps(const CartanVector& v, const FaceType& face);

// Smallest root gap over the face's pivots.
double min_root_gap(const CartanVector& v, const FaceType& face);

}  // namespace anosov
