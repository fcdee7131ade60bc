#pragma once

#include <vector>

#include "anosov/certify.hpp"
#include "anosov/flag.hpp"
#include "anosov/rep.hpp"

namespace anosov {

struct LimitPoint {
  Flag flag;
  Word word;  // cyclically reduced word whose high power produced the flag
};

struct LimitSample {
  FaceType face;
  std::vector<LimitPoint> points;
  double min_pairwise_margin = HUGE_VAL;  // antipodality margin over all pairs
  int skipped_words = 0;                  // words rejected as not proximal
  int merged_duplicates = 0;
  bool certified = false;  // whether a passing URU certificate was supplied
};

struct LimitSampleOptions {
  double dedup_distance = 1e-6;
  double min_gap = 0.5;  // proximality threshold for the powered word
  long max_words = 200000;
};

// Attracting flags of the N-th powers of all cyclically reduced words of
// the given length. Pass the certificate when available; a missing or
// failing certificate only marks the sample "uncertified".
LimitSample limit_set_sample(const Representation& rho, const FaceType& face, int word_len, int power,
                             const URUCertificate* cert = nullptr, const LimitSampleOptions& opts = {});

// Flags of the prefixes q(1), ..., q(n) of a reduced ray; Cauchy in flag
// distance for certified representations.
std::vector<Flag> boundary_map_sample(const Representation& rho, const FaceType& face, const Word& ray, int n,
                                      double min_gap = 1e-6);

struct ExpansionSeries {
  std::vector<double> rates;  // eps(q(k)^-1, beta) for k = 1..n
  double slope = 0.0;         // least-squares slope of log rates vs k
  double max_rate = 0.0;
  bool diverging = false;  // new maxima still appearing in the last third
  Flag boundary_flag;
};

// Expansion rates along a ray at its boundary flag (Anosov signature:
// exponential growth with uniform rate).
ExpansionSeries expansion_series(const Representation& rho, const FaceType& face, const Word& ray, int n,
                                 double converge_tol = 1e-6);

struct ExpansionWitness {
  bool found = false;
  Word word;
  double rate = 0.0;    // best expansion factor in the ball
  double margin = 0.0;  // rate - 1
};

// For each sampled limit flag, the best expanding element of the radius-R
// word ball. Points without an expanding witness report found = false.
std::vector<ExpansionWitness> expansion_at_limit_set(const Representation& rho, const LimitSample& sample,
                                                     int radius);

}  // namespace anosov
