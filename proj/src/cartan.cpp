#include "anosov/cartan.hpp"

#include <algorithm>
#include <cmath>

#include "anosov/compound.hpp"
#include "anosov/svd.hpp"

namespace anosov {

CartanVector::CartanVector(std::vector<double> c) : components(std::move(c)) {
  for (double x : components) {
    if (!std::isfinite(x)) throw NonFinite("cartan vector has non-finite component");
  }
  // Sorted order is part of the type; tolerate only rounding-level noise.
  for (size_t i = 1; i < components.size(); ++i) {
    if (components[i] > components[i - 1] + 1e-9) throw Error("cartan components not sorted");
  }
  std::sort(components.begin(), components.end(), std::greater<double>());
}

double CartanVector::sum() const {
  double s = 0.0;
  for (double x : components) s += x;
  return s;
}

double CartanVector::norm() const {
  double s = 0.0;
  for (double x : components) s += x * x;
  return std::sqrt(s);
}

CartanVector cartan_projection(const Matrix& g, const Tolerances& tol) {
  if (!g.square()) throw DimMismatch("cartan projection needs a square matrix");
  if (!g.is_finite()) throw NonFinite("cartan projection of non-finite matrix");
  const SVDResult s = svd(g);
  if (s.sigma.back() <= tol.svd_tol) throw SingularInput("smallest singular value below svd_tol");
  std::vector<double> logs(s.sigma.size());
  for (size_t i = 0; i < s.sigma.size(); ++i) logs[i] = std::log(s.sigma[i]);
  return CartanVector(std::move(logs));
}

CartanVector cartan_projection(const ScaledMatrix& g, const Tolerances& tol) {
  // Scaled input is the long-product representation of unimodular words;
  // the compound route keeps every component accurate long after the raw
  // singular values of the normalized factor have degenerated.
  (void)tol;
  return CompoundTrack::from(g).cartan();
}

KAKDecomposition kak(const Matrix& g, const Tolerances& tol) {
  if (!g.square()) throw DimMismatch("kak needs a square matrix");
  if (!g.is_finite()) throw NonFinite("kak of non-finite matrix");
  const SVDResult s = svd(g);
  if (s.sigma.back() <= tol.svd_tol) throw SingularInput("smallest singular value below svd_tol");
  std::vector<double> logs(s.sigma.size());
  for (size_t i = 0; i < s.sigma.size(); ++i) logs[i] = std::log(s.sigma[i]);
  return KAKDecomposition{s.u, CartanVector(std::move(logs)), s.v.transpose()};
}

std::vector<double> root_gaps(const CartanVector& v, const FaceType& face) {
  if (face.d != v.dim()) throw DimMismatch("face dimension does not match cartan vector");
  std::vector<double> gaps;
  gaps.reserve(face.pivots.size());
  for (int p : face.pivots) {
    if (p < 1 || p > v.dim() - 1) throw BadFace("pivot out of range");
    gaps.push_back(v.components[p - 1] - v.components[p]);
  }
  return gaps;
}

double min_root_gap(const CartanVector& v, const FaceType& face) {
  const std::vector<double> g = root_gaps(v, face);
  return *std::min_element(g.begin(), g.end());
}

}  // namespace anosov
