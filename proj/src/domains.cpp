#include "anosov/domains.hpp"

#include <functional>

namespace anosov {

ThickenedLimitSet ThickenedLimitSet::make(Thickening thickening, LimitSample sample, double tolerance) {
  if (thickening.d != sample.face.d) throw DimMismatch("thickening dimension does not match the sample face");
  const ThickeningFlags flags = classify_thickening(thickening, sample.face);
  if (!flags.downward_closed) throw Error("thickening must be downward closed in Bruhat order");
  if (!flags.stabilizer_invariant) throw Error("thickening must be invariant under the face stabilizer");
  ThickenedLimitSet t;
  t.thickening = std::move(thickening);
  t.sample = std::move(sample);
  t.tolerance = tolerance;
  return t;
}

InThickeningResult in_thickening(const Flag& chamber, const ThickenedLimitSet& t) {
  if (!chamber.face.is_full()) throw FaceMismatch("in_thickening classifies full-flag chambers");
  if (chamber.face.d != t.sample.face.d) throw DimMismatch("chamber dimension mismatch");
  bool saw_ambiguous = false;
  for (size_t i = 0; i < t.sample.points.size(); ++i) {
    try {
      const Perm pos = relative_position(chamber, t.sample.points[i].flag, t.tolerance);
      const Perm coset = coset_min_rep(pos, t.sample.face);
      if (t.thickening.contains(coset)) {
        return InThickeningResult{DomainClass::In, static_cast<int>(i), coset};
      }
    } catch (const DegeneratePosition&) {
      saw_ambiguous = true;
    }
  }
  InThickeningResult r;
  r.cls = saw_ambiguous ? DomainClass::Ambiguous : DomainClass::Out;
  return r;
}

std::vector<ClassifiedChamber> domain_sample(const ThickenedLimitSet& t, int count, uint64_t seed) {
  Rng rng(seed);
  const FaceType chamber_face = FaceType::full(t.sample.face.d);
  std::vector<ClassifiedChamber> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    ClassifiedChamber c;
    c.chamber = random_flag(chamber_face, rng);
    const InThickeningResult r = in_thickening(c.chamber, t);
    c.cls = r.cls;
    c.witness_index = r.witness_index;
    c.witness_coset = r.witness_coset;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CensusEntry> properness_census(const Representation& rho, const std::vector<Flag>& chambers, int L,
                                           double meet_tol, long budget) {
  if (chambers.empty()) throw Error("properness census needs a nonempty chamber sample");
  if (count_ball(rho.rank(), L, budget) > budget) throw BallTooLarge("census ball exceeds the budget");

  auto meets = [&](const ScaledMatrix& g) {
    for (const Flag& sigma : chambers) {
      const Flag moved = act(g, sigma);
      for (const Flag& target : chambers) {
        if (flag_distance(moved, target) <= meet_tol) return true;
      }
    }
    return false;
  };

  std::vector<CensusEntry> census(L + 1);
  for (int l = 0; l <= L; ++l) census[l].len = l;
  census[0].returns.push_back(Word{});  // the identity returns trivially

  Word w;
  ScaledMatrix acc = ScaledMatrix::from(Matrix::identity(rho.dim()));
  std::function<void(const ScaledMatrix&)> rec = [&](const ScaledMatrix& g) {
    if (!w.empty() && meets(g)) census[w.size()].returns.push_back(w);
    if (static_cast<int>(w.size()) == L) return;
    for (int gi = 0; gi < rho.rank(); ++gi) {
      for (int inv = 0; inv < 2; ++inv) {
        const Letter l{gi, inv != 0};
        if (!w.empty() && w.back() == l.inverted()) continue;
        w.push_back(l);
        rec(g.times(rho.letter_matrix(l)));
        w.pop_back();
      }
    }
  };
  rec(acc);
  return census;
}

}  // namespace anosov
