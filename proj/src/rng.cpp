#include "anosov/rng.hpp"

#include <cmath>

#include "anosov/svd.hpp"

namespace anosov {

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

Matrix random_orthogonal(int d, Rng& rng) {
  for (;;) {
    const Matrix g = random_gaussian(d, d, rng);
    try {
      return orthonormal_frame(g, 1e-10);
    } catch (const SingularInput&) {
      // measure-zero event, resample
    }
  }
}

Matrix random_unimodular(int d, Rng& rng, double max_condition) {
  for (;;) {
    Matrix g = random_gaussian(d, d, rng);
    double det = determinant(g);
    if (det == 0.0) continue;
    if (det < 0.0) {
      for (int j = 0; j < d; ++j) {
        const double t = g(0, j);
        g(0, j) = g(1, j);
        g(1, j) = t;
      }
    }
    Matrix u = make_unimodular(g);
    if (max_condition > 0.0) {
      const SVDResult s = svd(u);
      if (s.sigma.back() <= 0.0 || s.sigma.front() / s.sigma.back() > max_condition) continue;
    }
    return u;
  }
}

}  // namespace anosov
