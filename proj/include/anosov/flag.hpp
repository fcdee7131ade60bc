#pragma once

#include <cstdint>
#include <vector>

#include "anosov/face.hpp"
#include "anosov/matrix.hpp"
#include "anosov/rng.hpp"
#include "anosov/weyl.hpp"

namespace anosov {

// A point of the partial flag manifold of the given face type. The frame is
// a d x d orthogonal matrix whose leading D_1, ..., D_k columns span the
// nested subspaces; only those column spans are meaningful, equality is
// span equality per pivot block.
struct Flag {
  FaceType face;
  Matrix frame;
};

// Orthonormalizes `spanning` (a d x d matrix whose leading columns span the
// intended subspaces) into a flag frame.
Flag make_flag(const FaceType& face, const Matrix& spanning, double tol = 1e-12);

// The flag spanned by the leading standard basis vectors.
Flag standard_flag(const FaceType& face);

Flag act(const Matrix& g, const Flag& f, double tol = 1e-12);
Flag act(const ScaledMatrix& g, const Flag& f, double tol = 1e-12);

// Max over pivot blocks of the largest principal angle; metrizes the
// compact topology on the flag manifold.
double flag_distance(const Flag& a, const Flag& b);

struct AntipodalityResult {
  bool antipodal = false;
  double margin = 0.0;  // smallest singular value over the pivot pairings
};

// Transversality of every complementary pivot pair. Both flags must carry
// the same iota-invariant face type.
AntipodalityResult is_antipodal(const Flag& a, const Flag& b, double rank_tol = 1e-7);

// Position of a full-flag chamber relative to a flag: the permutation w
// with (tau, sigma) congruent to (standard flag, w * standard chamber),
// determined modulo the face stabilizer acting on the left. Canonicalize
// with coset_min_rep. Throws DegeneratePosition when a numerical rank is
// ambiguous at the given tolerance.
Perm relative_position(const Flag& chamber, const Flag& flag, double rank_tol = 1e-7);

// Expansion factor of the g-action at tau: the smallest singular value of
// the differential in orthonormal normal coordinates (K-invariant metric).
// Equals 1 for orthogonal g.
double expansion_rate(const Matrix& g, const Flag& tau, double tol = 1e-12);
double expansion_rate(const ScaledMatrix& g, const Flag& tau, double tol = 1e-12);

// Smallest and largest singular value of the same differential; the chain
// rule ties expansion_rate(g^-1, g tau) * expansion_bounds(g, tau).second
// to 1.
std::pair<double, double> expansion_bounds(const Matrix& g, const Flag& tau, double tol = 1e-12);

struct ContractionOptions {
  int sample_count = 100;        // compacta sample size (0 skips the decay report)
  double compacta_margin = 0.1;  // antipodality margin to tau_minus kept by samples
  double min_gap = 0.5;          // smallest admissible face gap at the last term
  uint64_t seed = 0x5EED;
  int max_tries = 100000;
};

struct ContractionResult {
  Flag tau_minus;
  Flag tau_plus;
  // sup over the sampled compact subset of dist(g_n * sigma, tau_plus),
  // one entry per input element; empty when sample_count == 0.
  std::vector<double> sup_distance;
};

// Attracting/repelling flags and uniform-convergence report of a
// contracting sequence. Throws NotRegular if the face gaps of the last
// element stay below min_gap or fail to grow along the sequence.
ContractionResult contraction_limits(const std::vector<Matrix>& gs, const FaceType& face,
                                     const ContractionOptions& opts = {}, const Tolerances& tol = {});

// Flag of the leading left singular subspaces of g.
Flag attracting_flag(const ScaledMatrix& g, const FaceType& face, double min_gap = 1e-6);

Flag random_flag(const FaceType& face, Rng& rng);

}  // namespace anosov
