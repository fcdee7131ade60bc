#pragma once

#include <string>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov {

// Letter of a free-group word: generator index plus inversion flag.
struct Letter {
  int gen = 0;
  bool inverse = false;

  bool operator==(const Letter& o) const { return gen == o.gen && inverse == o.inverse; }
  bool operator<(const Letter& o) const { return gen != o.gen ? gen < o.gen : inverse < o.inverse; }
  Letter inverted() const { return Letter{gen, !inverse}; }
};

using Word = std::vector<Letter>;

bool is_reduced(const Word& w);
// Reduced and the first letter is not the inverse of the last.
bool is_cyclically_reduced(const Word& w);
Word free_reduce(Word w);
Word inverse_word(const Word& w);

// Generator names are single upper-case letters; the lower-case letter is
// the inverse ("ABa" = A B A^-1).
std::string word_str(const Word& w, const std::vector<std::string>& names);
Word parse_word(const std::string& s, const std::vector<std::string>& names);

// Prefix of the periodic ray w w w ...; w must be cyclically reduced.
Word ray_prefix(const Word& w, int length);

// Number of reduced words of the given length in the rank-r free group,
// clamped at `cap` to avoid overflow.
long count_reduced_words(int rank, int len, long cap);
// Total count for lengths 1..L, clamped at `cap`.
long count_ball(int rank, int L, long cap);

// Lexicographic comparison on (gen, inverse) sequences.
bool word_less(const Word& a, const Word& b);

}  // namespace anosov
