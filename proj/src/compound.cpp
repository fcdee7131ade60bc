#include "anosov/compound.hpp"

#include <cmath>

#include "anosov/svd.hpp"

namespace anosov {

namespace {

std::vector<std::vector<int>> k_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == d - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

Matrix compound_matrix(const Matrix& a, int k) {
  if (!a.square()) throw DimMismatch("compound of a non-square matrix");
  const int d = a.rows();
  if (k < 1 || k > d) throw Error("compound order out of range");
  const auto subsets = k_subsets(d, k);
  const int n = static_cast<int>(subsets.size());
  Matrix c(n, n);
  Matrix minor(k, k);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = a(subsets[r][i], subsets[s][j]);
      c(r, s) = determinant(minor);
    }
  }
  return c;
}

CompoundTrack CompoundTrack::from(const ScaledMatrix& g) {
  CompoundTrack t;
  t.d = g.dim();
  t.lam.reserve(t.d - 1);
  for (int k = 1; k <= t.d - 1; ++k) {
    ScaledMatrix c = ScaledMatrix::from(k == 1 ? g.m : compound_matrix(g.m, k));
    c.log_scale += k * g.log_scale;
    t.lam.push_back(std::move(c));
  }
  return t;
}

CompoundTrack CompoundTrack::identity(int d) {
  CompoundTrack t;
  t.d = d;
  const auto subsets_sizes = [&](int k) {
    long n = 1;
    for (int i = 0; i < k; ++i) n = n * (d - i) / (i + 1);
    return static_cast<int>(n);
  };
  for (int k = 1; k <= d - 1; ++k) {
    t.lam.push_back(ScaledMatrix::from(Matrix::identity(subsets_sizes(k))));
  }
  return t;
}

CompoundTrack CompoundTrack::times(const CompoundTrack& o) const {
  if (d != o.d) throw DimMismatch("compound track dimension mismatch");
  CompoundTrack t;
  t.d = d;
  t.lam.reserve(lam.size());
  for (size_t i = 0; i < lam.size(); ++i) t.lam.push_back(lam[i].times(o.lam[i]));
  return t;
}

CartanVector CompoundTrack::cartan() const {
  // Partial sums S_k = sum of the k leading log singular values, read off
  // as the top singular value of the k-th compound. S_d = 0 for SL(d,R).
  std::vector<double> s(d + 1, 0.0);
  for (int k = 1; k <= d - 1; ++k) {
    s[k] = std::log(largest_singular_value(lam[k - 1].m)) + lam[k - 1].log_scale;
  }
  s[d] = 0.0;
  std::vector<double> v(d);
  for (int k = 1; k <= d; ++k) v[k - 1] = s[k] - s[k - 1];
  return CartanVector(std::move(v));
}

}  // namespace anosov
