#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anosov/errors.hpp"
#include "anosov/face.hpp"

namespace anosov {

// Element of the Weyl group W = S_d, stored as the image array of a
// permutation of {0,...,d-1}. Composition is (u*v)(i) = u(v(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> img);

  static Perm identity(int d);
  // s_i swaps i and i+1 (1-based simple reflection index, i in [1, d-1]).
  static Perm simple(int d, int i);
  // Order-reversing permutation i -> d+1-i, the longest element.
  static Perm longest(int d);

  int dim() const { return static_cast<int>(img_.size()); }
  int image(int i) const { return img_[i]; }
  const std::vector<int>& image_array() const { return img_; }

  bool is_identity() const;
  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }  // lex by image array

  // Coxeter length = inversion count.
  int length() const;

  // One-line notation, 1-based: "213" for d <= 9, space-separated otherwise.
  std::string one_line() const;
  static Perm from_one_line(const std::string& s, int d);

 private:
  std::vector<int> img_;
};

// Strong Bruhat order via the rank-matrix criterion; agrees with the
// subword property.
bool bruhat_leq(const Perm& u, const Perm& v);

Perm longest_element(int d);

// Conjugation by the longest element, w0 w w0.
Perm opposition(const Perm& w);

// The parabolic subgroup generated by the simple reflections s_i with
// i not a pivot of the face: block permutations preserving the pivot
// blocks. Returned in ascending lex order.
std::vector<Perm> face_stabilizer(const FaceType& face);

// Minimal-length representative of the left-stabilizer coset W_face * w.
Perm coset_min_rep(const Perm& w, const FaceType& face);

long factorial(int d);
// Lexicographic rank of the image array among all permutations of d.
long perm_rank(const Perm& w);
Perm perm_unrank(int d, long rank);

// Subset of S_d held as a bitset over the lexicographic enumeration.
// Practical through d = 7.
struct Thickening {
  int d = 0;
  std::vector<uint8_t> member;

  static Thickening empty(int d);
  static Thickening from_perms(int d, const std::vector<Perm>& ps);

  bool contains(const Perm& w) const { return member[perm_rank(w)] != 0; }
  void insert(const Perm& w) { member[perm_rank(w)] = 1; }
  long size() const;
  std::vector<Perm> members() const;            // ascending lex order
  std::vector<Perm> members_by_length() const;  // by (length, lex)

  bool operator==(const Thickening& o) const { return d == o.d && member == o.member; }
  bool operator<(const Thickening& o) const { return member < o.member; }  // lex by bitset
};

struct ThickeningFlags {
  bool downward_closed = false;
  bool fat = false;
  bool slim = false;
  bool balanced = false;
  bool stabilizer_invariant = false;  // only meaningful when a face was supplied
};

// Exact classification, no tolerances. The face argument adds the
// left-invariance check under its stabilizer.
ThickeningFlags classify_thickening(const Thickening& t);
ThickeningFlags classify_thickening(const Thickening& t, const FaceType& face);

inline bool is_thickening(const Thickening& t) { return classify_thickening(t).downward_closed; }

// All downward-closed, stabilizer-invariant, balanced thickenings for an
// iota-invariant face, sorted lexicographically by membership bitset.
// Searches over order ideals with in/out propagation rather than raw subsets.
std::vector<Thickening> enumerate_balanced(int d, const FaceType& face);

}  // namespace anosov
