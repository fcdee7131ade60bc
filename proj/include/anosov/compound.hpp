#pragma once

#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/matrix.hpp"

namespace anosov {

// k-th compound (exterior power) of a square matrix: entries are the k x k
// minors, rows and columns indexed by k-subsets in lexicographic order.
Matrix compound_matrix(const Matrix& a, int k);

// Scaled compounds Lambda^k g for k = 1..d-1. The top singular value of
// Lambda^k g is the product of the k leading singular values of g, so the
// track recovers the full Cartan vector of a long product from quantities
// that stay relatively accurate at any conditioning; top singular values
// never suffer the absolute-error floor that small ones do.
struct CompoundTrack {
  int d = 0;
  std::vector<ScaledMatrix> lam;  // lam[k-1] = k-th compound

  static CompoundTrack from(const ScaledMatrix& g);
  static CompoundTrack identity(int d);
  CompoundTrack times(const CompoundTrack& o) const;

  // Cartan vector of the tracked product; assumes |det| = 1 (the library
  // evaluates words in unimodular generators only).
  CartanVector cartan() const;
};

}  // namespace anosov
