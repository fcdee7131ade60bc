#include "anosov/flag.hpp"

#include <algorithm>
#include <cmath>

#include "anosov/svd.hpp"

namespace anosov {

Flag make_flag(const FaceType& face, const Matrix& spanning, double tol) {
  if (spanning.rows() != face.d || spanning.cols() != face.d) throw DimMismatch("flag frame must be d x d");
  return Flag{face, orthonormal_frame(spanning, tol)};
}

Flag standard_flag(const FaceType& face) { return Flag{face, Matrix::identity(face.d)}; }

Flag act(const Matrix& g, const Flag& f, double tol) {
  if (g.rows() != f.face.d || g.cols() != f.face.d) throw DimMismatch("group element dimension mismatch");
  int det_sign = 0;
  log_abs_determinant(g, &det_sign);
  if (det_sign == 0) throw SingularInput("singular matrix does not act on flags");
  return Flag{f.face, flag_frame(g * f.frame, f.face.pivots.back(), tol)};
}

Flag act(const ScaledMatrix& g, const Flag& f, double tol) {
  // Scaled products are invertible by construction; their normalized factor
  // may still be numerically rank-deficient past the pivot blocks, which
  // flag_frame tolerates.
  return Flag{f.face, flag_frame(g.m * f.frame, f.face.pivots.back(), tol)};
}

double flag_distance(const Flag& a, const Flag& b) {
  if (!(a.face == b.face)) throw FaceMismatch("flag distance needs equal face types");
  double dist = 0.0;
  for (int p : a.face.pivots) {
    dist = std::max(dist, largest_principal_angle(a.frame.columns(0, p), b.frame.columns(0, p)));
  }
  return dist;
}

AntipodalityResult is_antipodal(const Flag& a, const Flag& b, double rank_tol) {
  if (!(a.face == b.face)) throw FaceMismatch("antipodality needs equal face types");
  if (!a.face.is_iota_invariant()) throw NotIotaInvariant("antipodality needs an iota-invariant face");
  const int d = a.face.d;
  double margin = HUGE_VAL;
  for (int p : a.face.pivots) {
    const Matrix joint = Matrix::hcat(a.frame.columns(0, p), b.frame.columns(0, d - p));
    margin = std::min(margin, smallest_singular_value(joint));
  }
  return AntipodalityResult{margin > rank_tol, margin};
}

namespace {

// Rank of the concatenated orthonormal blocks, with an ambiguity guard band
// around the tolerance.
int joint_rank(const Matrix& a, const Matrix& b, double rank_tol) {
  const SVDResult s = svd(Matrix::hcat(a, b));
  int rank = 0;
  for (double x : s.sigma) {
    if (x >= rank_tol / 10.0 && x <= rank_tol * 10.0) {
      throw DegeneratePosition("singular value inside the rank tolerance band");
    }
    if (x > rank_tol) ++rank;
  }
  return rank;
}

}  // namespace

Perm relative_position(const Flag& chamber, const Flag& flag, double rank_tol) {
  if (!chamber.face.is_full()) throw FaceMismatch("relative position needs a full-flag chamber");
  if (chamber.face.d != flag.face.d) throw DimMismatch("relative position dimension mismatch");
  const int d = chamber.face.d;
  const std::vector<int> bounds = flag.face.block_bounds();  // 0 = b_0 < ... < b_nb = d
  const int nb = static_cast<int>(bounds.size()) - 1;

  // c[k][b] = dim(sigma_k  ∩  tau_{bounds[b]}), with tau_d the whole space.
  std::vector<std::vector<int>> c(d + 1, std::vector<int>(nb + 1, 0));
  for (int k = 0; k <= d; ++k) c[k][nb] = k;
  for (int k = 1; k <= d; ++k) {
    for (int b = 1; b < nb; ++b) {
      const int j = bounds[b];
      const int rank = joint_rank(chamber.frame.columns(0, k), flag.frame.columns(0, j), rank_tol);
      c[k][b] = k + j - rank;
      if (c[k][b] < 0 || c[k][b] > std::min(k, j)) throw DegeneratePosition("inconsistent intersection table");
    }
  }

  // Row k places the new chamber direction in exactly one pivot block.
  std::vector<int> next_value(nb);
  for (int b = 0; b < nb; ++b) next_value[b] = bounds[b];
  std::vector<int> img(d, -1);
  for (int k = 1; k <= d; ++k) {
    int hit = -1;
    for (int b = 1; b <= nb; ++b) {
      const int inc_hi = c[k][b] - c[k - 1][b];
      const int inc_lo = (b >= 1) ? c[k][b - 1] - c[k - 1][b - 1] : 0;
      if (inc_hi < 0 || inc_hi > 1 || inc_lo < 0 || inc_lo > 1) throw DegeneratePosition("non-monotone intersection table");
      if (inc_hi == 1 && inc_lo == 0) {
        if (hit >= 0) throw DegeneratePosition("ambiguous block assignment");
        hit = b - 1;
      }
    }
    if (hit < 0) throw DegeneratePosition("no block assignment for a chamber step");
    if (next_value[hit] >= bounds[hit + 1]) throw DegeneratePosition("block capacity exceeded");
    img[k - 1] = next_value[hit]++;
  }
  return Perm(std::move(img));
}

namespace {

std::vector<int> block_of_index(const FaceType& face) {
  const std::vector<int> bounds = face.block_bounds();
  std::vector<int> blk(face.d);
  int b = 0;
  for (int i = 0; i < face.d; ++i) {
    while (i >= bounds[b + 1]) ++b;
    blk[i] = b;
  }
  return blk;
}

std::pair<double, double> expansion_bounds_impl(const Matrix& gm, const Flag& tau, double tol) {
  const Flag image = act(gm, tau, tol);
  const Matrix t = image.frame.transpose() * (gm * tau.frame);
  const Matrix tinv = inverse(t, tol);

  const std::vector<int> blk = block_of_index(tau.face);
  std::vector<std::pair<int, int>> coords;  // block-lower entries (i, j)
  const int d = tau.face.d;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (blk[i] > blk[j]) coords.emplace_back(i, j);

  const int m = static_cast<int>(coords.size());
  if (m == 0) throw BadFace("face has no tangent directions");
  // Differential in normal coordinates: X -> block-lower part of T X T^-1.
  // For X = E_{i0 j0} that is the outer product of column i0 of T with row
  // j0 of T^-1.
  Matrix l(m, m);
  for (int cidx = 0; cidx < m; ++cidx) {
    const auto [i0, j0] = coords[cidx];
    for (int ridx = 0; ridx < m; ++ridx) {
      const auto [i, j] = coords[ridx];
      l(ridx, cidx) = t(i, i0) * tinv(j0, j);
    }
  }
  const SVDResult s = svd(l);
  return {s.sigma.back(), s.sigma.front()};
}

}  // namespace

double expansion_rate(const Matrix& g, const Flag& tau, double tol) {
  if (!g.is_finite()) throw NonFinite("expansion rate of non-finite matrix");
  return expansion_bounds_impl(g, tau, tol).first;
}

double expansion_rate(const ScaledMatrix& g, const Flag& tau, double tol) {
  // The conjugation T X T^-1 is scale-free, so the normalized factor suffices.
  return expansion_bounds_impl(g.m, tau, tol).first;
}

std::pair<double, double> expansion_bounds(const Matrix& g, const Flag& tau, double tol) {
  if (!g.is_finite()) throw NonFinite("expansion rate of non-finite matrix");
  return expansion_bounds_impl(g, tau, tol);
}

namespace {

std::vector<double> log_singular_values(const SVDResult& s) {
  std::vector<double> logs(s.sigma.size());
  for (size_t i = 0; i < s.sigma.size(); ++i) {
    logs[i] = std::log(std::max(s.sigma[i], 1e-300));
  }
  return logs;
}

double min_face_gap(const std::vector<double>& logs, const FaceType& face) {
  double g = HUGE_VAL;
  for (int p : face.pivots) g = std::min(g, logs[p - 1] - logs[p]);
  return g;
}

}  // namespace

ContractionResult contraction_limits(const std::vector<Matrix>& gs, const FaceType& face,
                                     const ContractionOptions& opts, const Tolerances& tol) {
  if (gs.size() < 2) throw Error("contraction_limits needs at least two matrices");
  for (const Matrix& g : gs) {
    if (g.rows() != face.d || g.cols() != face.d) throw DimMismatch("sequence dimension mismatch");
    if (!g.is_finite()) throw NonFinite("sequence contains non-finite matrix");
  }
  const SVDResult last = svd(gs.back());
  const SVDResult first = svd(gs.front());
  const double gap_last = min_face_gap(log_singular_values(last), face);
  const double gap_first = min_face_gap(log_singular_values(first), face);
  if (gap_last < opts.min_gap) throw NotRegular("face gaps of the last term below threshold");
  if (gap_last + 1e-12 < gap_first) throw NotRegular("face gaps do not grow along the sequence");

  ContractionResult r;
  r.tau_plus = Flag{face, last.u};
  Matrix vrev(face.d, face.d);
  for (int i = 0; i < face.d; ++i)
    for (int j = 0; j < face.d; ++j) vrev(i, j) = last.v(i, face.d - 1 - j);
  r.tau_minus = Flag{face, vrev};

  if (opts.sample_count > 0) {
    Rng rng(opts.seed);
    std::vector<Flag> samples;
    int tries = 0;
    while (static_cast<int>(samples.size()) < opts.sample_count && tries < opts.max_tries) {
      ++tries;
      Flag cand = random_flag(face, rng);
      if (is_antipodal(cand, r.tau_minus, tol.rank_tol).margin > opts.compacta_margin) samples.push_back(cand);
    }
    if (static_cast<int>(samples.size()) < opts.sample_count) {
      throw Error("could not sample the requested compact subset");
    }
    r.sup_distance.reserve(gs.size());
    for (const Matrix& g : gs) {
      const ScaledMatrix gm = ScaledMatrix::from(g);
      double sup = 0.0;
      for (const Flag& s : samples) sup = std::max(sup, flag_distance(act(gm, s), r.tau_plus));
      r.sup_distance.push_back(sup);
    }
  }
  return r;
}

Flag attracting_flag(const ScaledMatrix& g, const FaceType& face, double min_gap) {
  const SVDResult s = svd(g.m);
  const std::vector<double> logs = log_singular_values(s);
  if (min_face_gap(logs, face) < min_gap) throw NotRegular("face gaps too small to define the attracting flag");
  return Flag{face, s.u};
}

Flag random_flag(const FaceType& face, Rng& rng) { return Flag{face, random_orthogonal(face.d, rng)}; }

}  // namespace anosov
