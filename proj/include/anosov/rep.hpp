#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/compound.hpp"
#include "anosov/matrix.hpp"
#include "anosov/words.hpp"

namespace anosov {

// Named generator image in scaled form; the inverse may be supplied when a
// more accurate route than numerical inversion exists (e.g. negative powers
// of an axial element).
struct NamedGenerator {
  std::string name;
  ScaledMatrix image;
  bool has_inverse = false;
  ScaledMatrix inverse;
};

// Representation of a free group into SL(d,R): named generator images plus
// everything needed to evaluate and measure reduced words.
class Representation {
 public:
  // Generator matrices must be unimodular within tol.det_tol.
  static Representation make(std::vector<std::pair<std::string, Matrix>> generators, Tolerances tol = {});
  // Same, for generators already in scaled form (log-det checked instead).
  // verify_det = false skips the check for generators whose unimodularity
  // is exact by construction but unmeasurable from the assembled entries
  // (e.g. high powers of an axial element, condition beyond 1/eps).
  static Representation make_scaled(int d, std::vector<NamedGenerator> generators, Tolerances tol = {},
                                    bool verify_det = true);

  int dim() const { return d_; }
  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const Tolerances& tolerances() const { return tol_; }

  const ScaledMatrix& letter_matrix(const Letter& l) const;
  const CompoundTrack& letter_track(const Letter& l) const;

  // Product of generator images along a reduced word, in scaled form.
  // Throws NotReduced for non-reduced input and UnknownGenerator for
  // out-of-range letters. Results are memoized (thread-safe).
  ScaledMatrix evaluate(const Word& w) const;

  // Cartan vector of a reduced word via the compound track; accurate at
  // any word length.
  CartanVector word_cartan(const Word& w) const;

 private:
  Representation() = default;

  struct EvalCache {
    std::mutex mu;
    std::map<Word, ScaledMatrix> map;
  };

  int d_ = 0;
  Tolerances tol_;
  std::vector<std::string> names_;
  std::vector<ScaledMatrix> gens_;     // index 2*i (generator), 2*i+1 (inverse)
  std::vector<CompoundTrack> tracks_;  // same layout
  std::shared_ptr<EvalCache> cache_ = std::make_shared<EvalCache>();
};

}  // namespace anosov
