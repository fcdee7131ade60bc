#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anosov/certify.hpp"
#include "anosov/flag.hpp"
#include "anosov/rep.hpp"

namespace anosov {

// conjugator * diag(eigenvalues) * conjugator^-1 for positive descending
// eigenvalues with product 1.
Matrix make_axial(const std::vector<double>& eigenvalues, const Matrix& conjugator, const Tolerances& tol = {});

// Pair of axial elements with their attracting/repelling flags for a fixed
// face type. Both elements must be proximal on the face's pivots.
struct AxialPair {
  FaceType face;
  std::vector<double> alpha_eigs, beta_eigs;
  Matrix alpha_basis, beta_basis;  // eigenbases, columns by descending eigenvalue
  Flag alpha_plus, alpha_minus, beta_plus, beta_minus;
  double proximality_margin = 0.0;  // min log eigenvalue gap over the pivots

  static AxialPair make(const std::vector<double>& alpha_eigs, const Matrix& alpha_conj,
                        const std::vector<double>& beta_eigs, const Matrix& beta_conj, const FaceType& face,
                        const Tolerances& tol = {});

  // alpha^m (or beta^m) in scaled form, stable for any power.
  ScaledMatrix alpha_power(long m, const Tolerances& tol = {}) const;
  ScaledMatrix beta_power(long n, const Tolerances& tol = {}) const;
};

struct GenericityResult {
  bool generic = false;
  double margin = 0.0;  // min pairwise antipodality margin of the four fixed flags
};

// The four fixed flags must be pairwise antipodal.
GenericityResult genericity_check(const AxialPair& pair, const Tolerances& tol = {});

// Free rank-2 representation A -> alpha^m, B -> beta^n.
Representation schottky_rep(const AxialPair& pair, long m, long n, const Tolerances& tol = {});

struct PingPongCertificate {
  double radius = 0.0;               // common ball radius around the four fixed flags
  double min_center_distance = 0.0;  // min pairwise distance of the centers
  std::array<Flag, 4> centers;       // A+, A-, B+, B-
  std::array<double, 4> margins{};   // inclusion margin per letter A, A^-1, B, B^-1
  int samples_per_letter = 0;
  bool pass = false;
};

struct PingPongOptions {
  double radius_multiplier = 0.8;  // fraction of half the minimal center distance
  int samples = 200;
  uint64_t seed = 0x5EED;
};

// Sampled verification that each letter maps the complement of its
// repelling ball into its attracting ball; freeness evidence, not a proof.
// Requires a generic pair; throws NeighborhoodsOverlap when the balls
// cannot be disjoint at the requested radius.
PingPongCertificate pingpong_certificate(const AxialPair& pair, long m, long n, const PingPongOptions& opts = {},
                                         const Tolerances& tol = {});

struct PowerSearchResult {
  long power = 0;  // smallest m = n at which both certificates pass
  PingPongCertificate pingpong;
  URUCertificate uru;
};

// Scans m = n = 1, 2, ... up to cap; throws CapExceeded when no power
// passes both the ping-pong and the URU certification.
PowerSearchResult find_min_powers(const AxialPair& pair, int L, double min_slope, long cap,
                                  const PingPongOptions& pp_opts = {}, const EnumOptions& enum_opts = {},
                                  const Tolerances& tol = {});

}  // namespace anosov
