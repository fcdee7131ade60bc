#include "anosov/words.hpp"

#include <algorithm>

namespace anosov {

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverted()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && w.front() == w.back().inverted()) return false;
  return true;
}

Word free_reduce(Word w) {
  Word out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverted()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

std::string word_str(const Word& w, const std::vector<std::string>& names) {
  std::string s;
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= static_cast<int>(names.size())) throw UnknownGenerator("letter index out of range");
    const std::string& n = names[l.gen];
    if (n.size() != 1) throw Error("word_str needs single-letter generator names");
    s += l.inverse ? static_cast<char>(std::tolower(n[0])) : n[0];
  }
  return s.empty() ? "e" : s;
}

Word parse_word(const std::string& s, const std::vector<std::string>& names) {
  if (s == "e") return {};
  Word w;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    int gen = -1;
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i].size() == 1 && names[i][0] == upper) {
        gen = static_cast<int>(i);
        break;
      }
    }
    if (gen < 0) throw UnknownGenerator(std::string("unknown generator letter '") + c + "'");
    w.push_back(Letter{gen, std::islower(static_cast<unsigned char>(c)) != 0});
  }
  return w;
}

Word ray_prefix(const Word& w, int length) {
  if (w.empty()) throw NotReduced("ray needs a nonempty word");
  if (!is_cyclically_reduced(w)) throw NotReduced("ray word must be cyclically reduced");
  Word out;
  out.reserve(length);
  for (int i = 0; i < length; ++i) out.push_back(w[i % w.size()]);
  return out;
}

long count_reduced_words(int rank, int len, long cap) {
  if (len == 0) return 1;
  long n = 2L * rank;
  for (int i = 1; i < len; ++i) {
    if (n > cap / std::max(2L * rank - 1, 1L)) return cap + 1;
    n *= (2L * rank - 1);
  }
  return std::min(n, cap + 1);
}

long count_ball(int rank, int L, long cap) {
  long total = 0;
  for (int l = 1; l <= L; ++l) {
    total += count_reduced_words(rank, l, cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Letter& x, const Letter& y) { return x < y; });
}

}  // namespace anosov
