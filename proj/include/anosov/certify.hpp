#pragma once

#include <vector>

#include "anosov/face.hpp"
#include "anosov/rep.hpp"
#include "anosov/words.hpp"

namespace anosov {

struct EnumOptions {
  long budget = 5'000'000;  // hard cap on word evaluations
  int threads = 1;          // prefix-sharded workers; output independent of the count
};

struct GapRecord {
  int len = 0;
  double min_gap = 0.0;   // min over reduced words of the min face root gap
  double min_norm = 0.0;  // min over reduced words of ||cartan||_2
  Word argmin_gap;
  Word argmin_norm;
  long words = 0;
};

// Exact per-length minima over the full reduced-word ball, lengths 1..L.
struct GapProfile {
  FaceType face;
  std::vector<GapRecord> per_length;
};

GapProfile gap_profile(const Representation& rho, const FaceType& face, int L, const EnumOptions& opts = {});

// Largest-slope supporting line of the lower convex hull of
// {(0,0)} union {(len, minima[len-1])}: values >= slope*len - intercept
// with intercept >= 0.
struct DriftFit {
  double slope = 0.0;
  double intercept = 0.0;
};
DriftFit minorant_fit(const std::vector<double>& minima);

// Evidence-at-radius-L certificate: linear drift of the face gaps (URU
// regularity part) and of the Cartan norm (undistortion part). A pass is
// evidence, not a proof.
struct URUCertificate {
  FaceType face;
  int L = 0;
  double min_slope = 0.0;
  double c = 0.0, a = 0.0;        // gap(len) >= c*len - a over the ball
  double c_qi = 0.0, a_qi = 0.0;  // ||cartan||(len) >= c_qi*len - a_qi
  double margin = 0.0;            // min slack of the gap bound
  bool tail_ok = false;           // last-third growth at rate >= c/2
  bool pass = false;
  GapProfile profile;
};

URUCertificate certify_uru(const Representation& rho, const FaceType& face, int L, double min_slope,
                           const EnumOptions& opts = {});

// Midpoint additivity defect ||cartan(w) - cartan(w1) - cartan(w2)||_inf
// maximized per total length; bounded defect across lengths is the Morse
// signature.
struct DefectRecord {
  int len = 0;
  double max_defect = 0.0;
  Word argmax;
};

std::vector<DefectRecord> additivity_defect(const Representation& rho, const FaceType& face, int L,
                                            const EnumOptions& opts = {});

}  // namespace anosov
