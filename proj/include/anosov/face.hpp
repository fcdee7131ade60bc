#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov {

// A face type for SL(d,R): a set of pivot dimensions D inside {1,...,d-1}.
// The full face D = {1,...,d-1} corresponds to complete flags.
struct FaceType {
  int d = 0;
  std::vector<int> pivots;  // strictly increasing, within [1, d-1]

  FaceType() = default;
  FaceType(int dim, std::vector<int> p) : d(dim), pivots(std::move(p)) {
    if (d < 2) throw BadFace("face needs d >= 2");
    if (pivots.empty()) throw BadFace("face needs at least one pivot");
    for (size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] < 1 || pivots[i] > d - 1) throw BadFace("pivot out of range");
      if (i > 0 && pivots[i] <= pivots[i - 1]) throw BadFace("pivots must be strictly increasing");
    }
  }

  static FaceType full(int d) {
    std::vector<int> p(d - 1);
    for (int i = 0; i < d - 1; ++i) p[i] = i + 1;
    return FaceType(d, std::move(p));
  }

  bool is_full() const { return static_cast<int>(pivots.size()) == d - 1; }

  // Invariance under the opposition involution: D = { d - i : i in D }.
  bool is_iota_invariant() const {
    for (int p : pivots) {
      if (!std::binary_search(pivots.begin(), pivots.end(), d - p)) return false;
    }
    return true;
  }

  bool operator==(const FaceType& o) const { return d == o.d && pivots == o.pivots; }

  // Block boundaries 0 = b_0 < b_1 < ... < b_k = d given by the pivots.
  std::vector<int> block_bounds() const {
    std::vector<int> b;
    b.push_back(0);
    for (int p : pivots) b.push_back(p);
    b.push_back(d);
    return b;
  }

  std::string str() const {
    std::string s = "{";
    for (size_t i = 0; i < pivots.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(pivots[i]);
    }
    s += "}";
    return s;
  }
};

}  // namespace anosov
