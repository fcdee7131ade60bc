#pragma once

#include <cstdint>
#include <vector>

#include "anosov/flag.hpp"
#include "anosov/limits.hpp"
#include "anosov/weyl.hpp"

namespace anosov {

// A combinatorial thickening applied to a sampled limit set. The limit set
// is only a finite sample, so the thickened set is an under-approximation;
// the sample size and its antipodality margin bound the coverage.
struct ThickenedLimitSet {
  Thickening thickening;
  LimitSample sample;
  double tolerance = 1e-7;  // rank tolerance for position classification

  // Validates that the thickening is downward closed and invariant under
  // the stabilizer of the sample's face.
  static ThickenedLimitSet make(Thickening thickening, LimitSample sample, double tolerance = 1e-7);
};

enum class DomainClass { In, Out, Ambiguous };

struct InThickeningResult {
  DomainClass cls = DomainClass::Out;
  int witness_index = -1;  // index of the limit point realizing membership
  Perm witness_coset;      // canonical coset of the realizing position
};

// A chamber lies in the thickened limit set when its position relative to
// some sampled limit flag lands in the thickening. Rank degeneracies make
// the chamber "boundary-ambiguous" rather than silently classified.
InThickeningResult in_thickening(const Flag& chamber, const ThickenedLimitSet& t);

struct ClassifiedChamber {
  Flag chamber;
  DomainClass cls = DomainClass::Out;
  int witness_index = -1;
  Perm witness_coset;
};

// Seeded pseudo-random chambers classified against the thickened limit set.
std::vector<ClassifiedChamber> domain_sample(const ThickenedLimitSet& t, int count, uint64_t seed = 0x5EED);

struct CensusEntry {
  int len = 0;
  std::vector<Word> returns;  // words w with rho(w) K meeting K
};

// Return-set census for a finite chamber sample K: which words of length
// <= L bring K back onto itself within meet_tol. Stabilization (no new
// returns beyond some length) is the properness evidence.
std::vector<CensusEntry> properness_census(const Representation& rho, const std::vector<Flag>& chambers, int L,
                                           double meet_tol, long budget = 1'000'000);

}  // namespace anosov
