#include "anosov/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace anosov {

Perm::Perm(std::vector<int> img) : img_(std::move(img)) {
  std::vector<uint8_t> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x]) throw Error("not a permutation");
    seen[x] = 1;
  }
}

Perm Perm::identity(int d) {
  std::vector<int> img(d);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::simple(int d, int i) {
  if (i < 1 || i > d - 1) throw Error("simple reflection index out of range");
  Perm p = identity(d);
  std::swap(p.img_[i - 1], p.img_[i]);
  return p;
}

Perm Perm::longest(int d) {
  std::vector<int> img(d);
  for (int i = 0; i < d; ++i) img[i] = d - 1 - i;
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (int i = 0; i < dim(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

Perm Perm::operator*(const Perm& o) const {
  if (dim() != o.dim()) throw DimMismatch("permutation dimension mismatch");
  std::vector<int> img(dim());
  for (int i = 0; i < dim(); ++i) img[i] = img_[o.img_[i]];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<int> img(dim());
  for (int i = 0; i < dim(); ++i) img[img_[i]] = i;
  return Perm(std::move(img));
}

int Perm::length() const {
  int inv = 0;
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (img_[i] > img_[j]) ++inv;
  return inv;
}

std::string Perm::one_line() const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    if (dim() > 9 && i) s += ' ';
    s += std::to_string(img_[i] + 1);
  }
  return s;
}

Perm Perm::from_one_line(const std::string& s, int d) {
  std::vector<int> img;
  if (d <= 9 && s.find(' ') == std::string::npos) {
    for (char c : s) {
      if (c < '1' || c > '9') throw ParseError("bad one-line permutation: " + s);
      img.push_back(c - '1');
    }
  } else {
    std::istringstream in(s);
    int x = 0;
    while (in >> x) img.push_back(x - 1);
  }
  if (static_cast<int>(img.size()) != d) throw ParseError("permutation length mismatch: " + s);
  return Perm(std::move(img));
}

bool bruhat_leq(const Perm& u, const Perm& v) {
  if (u.dim() != v.dim()) throw DimMismatch("bruhat_leq dimension mismatch");
  const int d = u.dim();
  // u <= v iff #{k <= i : u(k) <= j} >= #{k <= i : v(k) <= j} for all i, j.
  std::vector<int> ru(d, 0), rv(d, 0);
  for (int i = 0; i < d; ++i) {
    for (int j = u.image(i); j < d; ++j) ++ru[j];
    for (int j = v.image(i); j < d; ++j) ++rv[j];
    for (int j = 0; j < d; ++j) {
      if (ru[j] < rv[j]) return false;
    }
  }
  return true;
}

Perm longest_element(int d) {
  if (d < 2) throw Error("longest_element needs d >= 2");
  return Perm::longest(d);
}

Perm opposition(const Perm& w) {
  const Perm w0 = Perm::longest(w.dim());
  return w0 * w * w0;
}

std::vector<Perm> face_stabilizer(const FaceType& face) {
  // Block permutations: direct product of symmetric groups on the pivot
  // gaps, built block by block.
  const std::vector<int> bounds = face.block_bounds();
  std::vector<Perm> result;
  result.push_back(Perm::identity(face.d));
  for (size_t b = 0; b + 1 < bounds.size(); ++b) {
    const int lo = bounds[b], hi = bounds[b + 1];
    std::vector<int> block(hi - lo);
    std::iota(block.begin(), block.end(), lo);
    std::vector<std::vector<int>> arrangements;
    std::sort(block.begin(), block.end());
    do {
      arrangements.push_back(block);
    } while (std::next_permutation(block.begin(), block.end()));
    std::vector<Perm> extended;
    extended.reserve(result.size() * arrangements.size());
    for (const Perm& base : result) {
      for (const auto& arr : arrangements) {
        std::vector<int> img = base.image_array();
        for (int i = lo; i < hi; ++i) img[i] = arr[i - lo];
        extended.push_back(Perm(std::move(img)));
      }
    }
    result = std::move(extended);
  }
  std::sort(result.begin(), result.end());
  return result;
}

Perm coset_min_rep(const Perm& w, const FaceType& face) {
  if (w.dim() != face.d) throw DimMismatch("coset_min_rep dimension mismatch");
  // Left multiplication by the stabilizer relabels values within pivot
  // blocks; assigning each block's values in increasing position order
  // minimizes inversions.
  const std::vector<int> bounds = face.block_bounds();
  std::vector<int> img(w.dim(), -1);
  const Perm winv = w.inverse();
  for (size_t b = 0; b + 1 < bounds.size(); ++b) {
    const int lo = bounds[b], hi = bounds[b + 1];
    std::vector<int> positions;
    for (int val = lo; val < hi; ++val) positions.push_back(winv.image(val));
    std::sort(positions.begin(), positions.end());
    for (int k = 0; k < hi - lo; ++k) img[positions[k]] = lo + k;
  }
  return Perm(std::move(img));
}

long factorial(int d) {
  long f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

long perm_rank(const Perm& w) {
  const int d = w.dim();
  long rank = 0;
  for (int i = 0; i < d; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d; ++j)
      if (w.image(j) < w.image(i)) ++smaller;
    rank += smaller * factorial(d - 1 - i);
  }
  return rank;
}

Perm perm_unrank(int d, long rank) {
  std::vector<int> pool(d);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> img(d);
  for (int i = 0; i < d; ++i) {
    const long f = factorial(d - 1 - i);
    const long idx = rank / f;
    rank %= f;
    img[i] = pool[idx];
    pool.erase(pool.begin() + idx);
  }
  return Perm(std::move(img));
}

Thickening Thickening::empty(int d) {
  Thickening t;
  t.d = d;
  t.member.assign(factorial(d), 0);
  return t;
}

Thickening Thickening::from_perms(int d, const std::vector<Perm>& ps) {
  Thickening t = empty(d);
  for (const Perm& p : ps) {
    if (p.dim() != d) throw DimMismatch("thickening member dimension mismatch");
    t.insert(p);
  }
  return t;
}

long Thickening::size() const {
  long n = 0;
  for (uint8_t b : member) n += b;
  return n;
}

std::vector<Perm> Thickening::members() const {
  std::vector<Perm> out;
  for (long r = 0; r < static_cast<long>(member.size()); ++r) {
    if (member[r]) out.push_back(perm_unrank(d, r));
  }
  return out;
}

std::vector<Perm> Thickening::members_by_length() const {
  std::vector<Perm> out = members();
  std::stable_sort(out.begin(), out.end(), [](const Perm& a, const Perm& b) { return a.length() < b.length(); });
  return out;
}

namespace {

// Elements covered by w in Bruhat order: w * (transposition of two
// positions) that lose exactly one inversion.
std::vector<long> covers_down(const Perm& w) {
  const int d = w.dim();
  const int len = w.length();
  std::vector<long> out;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (w.image(i) <= w.image(j)) continue;
      std::vector<int> img = w.image_array();
      std::swap(img[i], img[j]);
      Perm u(std::move(img));
      if (u.length() == len - 1) out.push_back(perm_rank(u));
    }
  }
  return out;
}

std::vector<long> covers_up(const Perm& w) {
  const int d = w.dim();
  const int len = w.length();
  std::vector<long> out;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (w.image(i) >= w.image(j)) continue;
      std::vector<int> img = w.image_array();
      std::swap(img[i], img[j]);
      Perm v(std::move(img));
      if (v.length() == len + 1) out.push_back(perm_rank(v));
    }
  }
  return out;
}

}  // namespace

ThickeningFlags classify_thickening(const Thickening& t) {
  ThickeningFlags f;
  const long n = factorial(t.d);
  const Perm w0 = Perm::longest(t.d);

  f.downward_closed = true;
  for (long r = 0; r < n && f.downward_closed; ++r) {
    if (!t.member[r]) continue;
    for (long down : covers_down(perm_unrank(t.d, r))) {
      if (!t.member[down]) {
        f.downward_closed = false;
        break;
      }
    }
  }

  f.fat = true;
  f.slim = true;
  for (long r = 0; r < n; ++r) {
    const long partner = perm_rank(w0 * perm_unrank(t.d, r));
    const bool in_t = t.member[r], in_w0t = t.member[partner];
    if (!in_t && !in_w0t) f.fat = false;
    if (in_t && in_w0t) f.slim = false;
  }
  f.balanced = f.fat && f.slim;
  return f;
}

ThickeningFlags classify_thickening(const Thickening& t, const FaceType& face) {
  if (face.d != t.d) throw DimMismatch("face dimension does not match thickening");
  ThickeningFlags f = classify_thickening(t);
  f.stabilizer_invariant = true;
  for (int i = 1; i <= t.d - 1 && f.stabilizer_invariant; ++i) {
    if (std::binary_search(face.pivots.begin(), face.pivots.end(), i)) continue;
    const Perm s = Perm::simple(t.d, i);
    for (long r = 0; r < static_cast<long>(t.member.size()); ++r) {
      if (!t.member[r]) continue;
      if (!t.member[perm_rank(s * perm_unrank(t.d, r))]) {
        f.stabilizer_invariant = false;
        break;
      }
    }
  }
  return f;
}

namespace {

enum : int8_t { kUnknown = 0, kIn = 1, kOut = 2 };

struct BalancedSearch {
  int d;
  long n;
  std::vector<long> w0_partner;            // id of w0 * w
  std::vector<std::vector<long>> down;     // covers below
  std::vector<std::vector<long>> up;       // covers above
  std::vector<std::vector<long>> stab;     // s * w for each stabilizer generator
  std::vector<Thickening> found;

  bool force(std::vector<int8_t>& st, long id, int8_t want) const {
    std::vector<std::pair<long, int8_t>> stack{{id, want}};
    while (!stack.empty()) {
      auto [cur, w] = stack.back();
      stack.pop_back();
      if (st[cur] == w) continue;
      if (st[cur] != kUnknown) return false;
      st[cur] = w;
      stack.push_back({w0_partner[cur], w == kIn ? kOut : kIn});
      const auto& nbrs = (w == kIn) ? down[cur] : up[cur];
      for (long nb : nbrs) stack.push_back({nb, w});
      for (long nb : stab[cur]) stack.push_back({nb, w});
    }
    return true;
  }

  void recurse(std::vector<int8_t>& st) {
    long next = -1;
    for (long i = 0; i < n; ++i) {
      if (st[i] == kUnknown) {
        next = i;
        break;
      }
    }
    if (next < 0) {
      Thickening t = Thickening::empty(d);
      for (long i = 0; i < n; ++i) t.member[i] = (st[i] == kIn) ? 1 : 0;
      found.push_back(std::move(t));
      return;
    }
    for (int8_t choice : {kIn, kOut}) {
      std::vector<int8_t> branch = st;
      if (force(branch, next, choice)) recurse(branch);
    }
  }
};

}  // namespace

std::vector<Thickening> enumerate_balanced(int d, const FaceType& face) {
  if (face.d != d) throw DimMismatch("face dimension mismatch");
  if (!face.is_iota_invariant()) throw NotIotaInvariant("face must satisfy D = d - D");

  BalancedSearch s;
  s.d = d;
  s.n = factorial(d);
  s.w0_partner.resize(s.n);
  s.down.resize(s.n);
  s.up.resize(s.n);
  s.stab.resize(s.n);
  const Perm w0 = Perm::longest(d);
  std::vector<Perm> stab_gens;
  for (int i = 1; i <= d - 1; ++i) {
    if (!std::binary_search(face.pivots.begin(), face.pivots.end(), i)) stab_gens.push_back(Perm::simple(d, i));
  }
  for (long r = 0; r < s.n; ++r) {
    const Perm w = perm_unrank(d, r);
    s.w0_partner[r] = perm_rank(w0 * w);
    s.down[r] = covers_down(w);
    s.up[r] = covers_up(w);
    for (const Perm& g : stab_gens) s.stab[r].push_back(perm_rank(g * w));
  }

  std::vector<int8_t> st(s.n, kUnknown);
  // A balanced ideal is nonempty, hence contains the identity.
  if (s.force(st, perm_rank(Perm::identity(d)), kIn)) s.recurse(st);
  std::sort(s.found.begin(), s.found.end());
  return s.found;
}

}  // namespace anosov
