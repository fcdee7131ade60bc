#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "anosov/weyl.hpp"
#include "oracles.hpp"

using namespace anosov;

namespace {

std::vector<Perm> all_perms(int d) {
  std::vector<Perm> out;
  for (long r = 0; r < factorial(d); ++r) out.push_back(perm_unrank(d, r));
  return out;
}

Perm random_perm(int d, std::mt19937_64& rng) {
  return perm_unrank(d, static_cast<long>(rng() % factorial(d)));
}

}  // namespace

TEST_CASE("permutation basics") {
  const Perm e = Perm::identity(3);
  const Perm s1 = Perm::simple(3, 1);
  const Perm s2 = Perm::simple(3, 2);
  CHECK(e.is_identity());
  CHECK(s1.one_line() == "213");
  CHECK(s2.one_line() == "132");
  CHECK((s1 * s2).one_line() == "231");
  CHECK((s1 * s1).is_identity());
  CHECK((s1 * s2).inverse() == (s2 * s1));
  CHECK(Perm::from_one_line("231", 3) == (s1 * s2));
  CHECK_THROWS_AS(Perm::from_one_line("22", 2), Error);
  CHECK_THROWS_AS(Perm::simple(3, 3), Error);

  SUBCASE("rank and unrank are inverse bijections") {
    for (int d = 2; d <= 5; ++d) {
      for (long r = 0; r < factorial(d); ++r) {
        CHECK(perm_rank(perm_unrank(d, r)) == r);
      }
    }
  }
}

TEST_CASE("longest element") {
  CHECK(longest_element(2).one_line() == "21");
  CHECK(longest_element(3).one_line() == "321");
  for (int d = 2; d <= 6; ++d) {
    CHECK(longest_element(d).length() == d * (d - 1) / 2);
  }
  CHECK(longest_element(3).length() == 3);
}

TEST_CASE("bruhat order") {
  SUBCASE("identity is the minimum") {
    for (const Perm& w : all_perms(4)) CHECK(bruhat_leq(Perm::identity(4), w));
  }
  SUBCASE("simple examples in S_3") {
    const Perm s1 = Perm::simple(3, 1), s2 = Perm::simple(3, 2);
    CHECK(bruhat_leq(s2, s1 * s2));
    CHECK_FALSE(bruhat_leq(s1, s2));
    CHECK_FALSE(bruhat_leq(s2, s1));
  }
  SUBCASE("agrees with the subword oracle on all pairs of S_3 and S_4") {
    for (int d : {3, 4}) {
      const std::vector<Perm> ps = all_perms(d);
      for (const Perm& u : ps) {
        for (const Perm& v : ps) {
          CHECK(bruhat_leq(u, v) == testing::bruhat_leq_subword(u, v));
        }
      }
    }
  }
  SUBCASE("left multiplication by w0 reverses the order") {
    const Perm w0 = longest_element(4);
    const std::vector<Perm> ps = all_perms(4);
    for (const Perm& u : ps) {
      for (const Perm& v : ps) {
        CHECK(bruhat_leq(u, v) == bruhat_leq(w0 * v, w0 * u));
      }
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(bruhat_leq(Perm::identity(3), Perm::identity(4)), DimMismatch);
  }
}

TEST_CASE("opposition involution") {
  CHECK(opposition(Perm::identity(4)).is_identity());
  CHECK(opposition(Perm::simple(3, 1)) == Perm::simple(3, 2));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Perm w = random_perm(5, rng);
    CHECK(opposition(opposition(w)) == w);
    CHECK(opposition(w).length() == w.length());
  }
}

TEST_CASE("face stabilizer subgroups") {
  SUBCASE("full flag face has trivial stabilizer") {
    const std::vector<Perm> st = face_stabilizer(FaceType(3, {1, 2}));
    REQUIRE(st.size() == 1);
    CHECK(st[0].is_identity());
  }
  SUBCASE("d = 3, pivots {1}") {
    const std::vector<Perm> st = face_stabilizer(FaceType(3, {1}));
    REQUIRE(st.size() == 2);
    CHECK(st[0].is_identity());
    CHECK(st[1] == Perm::simple(3, 2));
  }
  SUBCASE("d = 4, pivots {2} gives <s1> x <s3>") {
    const std::vector<Perm> st = face_stabilizer(FaceType(4, {2}));
    CHECK(st.size() == 4);
    const std::vector<Perm> oracle =
        testing::subgroup_closure(4, {Perm::simple(4, 1), Perm::simple(4, 3)});
    CHECK(st == oracle);
  }
  SUBCASE("matches the closure oracle on every face of d = 4") {
    for (int mask = 1; mask < 8; ++mask) {
      std::vector<int> pivots;
      for (int i = 1; i <= 3; ++i)
        if (mask & (1 << (i - 1))) pivots.push_back(i);
      const FaceType face(4, pivots);
      std::vector<Perm> gens;
      for (int i = 1; i <= 3; ++i)
        if (!std::binary_search(pivots.begin(), pivots.end(), i)) gens.push_back(Perm::simple(4, i));
      CHECK(face_stabilizer(face) == testing::subgroup_closure(4, gens));
    }
  }
}

TEST_CASE("coset minimal representatives") {
  const FaceType face(3, {1});
  CHECK(coset_min_rep(Perm::identity(3), face).is_identity());
  CHECK(coset_min_rep(Perm::simple(3, 2), face).is_identity());
  SUBCASE("minimum over the explicit coset") {
    std::mt19937_64 rng(17);
    for (int d = 3; d <= 5; ++d) {
      for (int mask = 1; mask < (1 << (d - 1)); ++mask) {
        std::vector<int> pivots;
        for (int i = 1; i <= d - 1; ++i)
          if (mask & (1 << (i - 1))) pivots.push_back(i);
        const FaceType f(d, pivots);
        const std::vector<Perm> stab = face_stabilizer(f);
        for (int trial = 0; trial < 20; ++trial) {
          const Perm w = random_perm(d, rng);
          const Perm rep = coset_min_rep(w, f);
          int best = w.dim() * w.dim();
          Perm best_perm = w;
          for (const Perm& u : stab) {
            const Perm cand = u * w;
            if (cand.length() < best) {
              best = cand.length();
              best_perm = cand;
            }
          }
          CHECK(rep == best_perm);
        }
      }
    }
  }
  SUBCASE("d = 3, face {1}, w = s1 s2") {
    const Perm w = Perm::simple(3, 1) * Perm::simple(3, 2);
    const Perm rep = coset_min_rep(w, face);
    CHECK(rep == w);  // the coset {s1s2, s2s1s2} has min length 2
    CHECK(rep.length() == 2);
  }
}

TEST_CASE("thickening classification") {
  SUBCASE("d = 2 singleton identity") {
    const Thickening t = Thickening::from_perms(2, {Perm::identity(2)});
    const ThickeningFlags f = classify_thickening(t, FaceType(2, {1}));
    CHECK(f.downward_closed);
    CHECK(f.fat);
    CHECK(f.slim);
    CHECK(f.balanced);
    CHECK(f.stabilizer_invariant);
  }
  SUBCASE("d = 3 balanced example") {
    const Thickening t =
        Thickening::from_perms(3, {Perm::identity(3), Perm::simple(3, 1), Perm::simple(3, 2)});
    const ThickeningFlags f = classify_thickening(t);
    CHECK(f.downward_closed);
    CHECK(f.balanced);
  }
  SUBCASE("d = 3 fat but not slim") {
    const Thickening t = Thickening::from_perms(
        3, {Perm::identity(3), Perm::simple(3, 1), Perm::simple(3, 2), Perm::simple(3, 1) * Perm::simple(3, 2)});
    const ThickeningFlags f = classify_thickening(t);
    CHECK(f.downward_closed);
    CHECK(f.fat);
    CHECK_FALSE(f.slim);
    CHECK_FALSE(f.balanced);
  }
  SUBCASE("balanced = fat and slim on 10^4 random subsets of S_4") {
    std::mt19937_64 rng(23);
    const long n = factorial(4);
    for (int trial = 0; trial < 10000; ++trial) {
      Thickening t = Thickening::empty(4);
      for (long i = 0; i < n; ++i) t.member[i] = rng() & 1;
      const ThickeningFlags f = classify_thickening(t);
      // direct set computation
      const Perm w0 = longest_element(4);
      bool fat = true, slim = true;
      for (long r = 0; r < n; ++r) {
        const bool in_t = t.member[r];
        const bool in_w0t = t.member[perm_rank(w0 * perm_unrank(4, r))];
        fat = fat && (in_t || in_w0t);
        slim = slim && !(in_t && in_w0t);
      }
      CHECK(f.fat == fat);
      CHECK(f.slim == slim);
      CHECK(f.balanced == (fat && slim));
    }
  }
}

TEST_CASE("enumerate balanced thickenings") {
  SUBCASE("d = 2") {
    const std::vector<Thickening> out = enumerate_balanced(2, FaceType(2, {1}));
    REQUIRE(out.size() == 1);
    CHECK(out[0].members().size() == 1);
    CHECK(out[0].members()[0].is_identity());
  }
  SUBCASE("d = 3 full face matches raw brute force over all 64 subsets") {
    const FaceType face = FaceType::full(3);
    const std::vector<Thickening> out = enumerate_balanced(3, face);
    const std::vector<Thickening> oracle = testing::balanced_by_bruteforce(face);
    REQUIRE(out.size() == 1);
    CHECK(out == oracle);
    const std::vector<Perm> ms = out[0].members_by_length();
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].is_identity());
    CHECK(((ms[1] == Perm::simple(3, 1) && ms[2] == Perm::simple(3, 2)) ||
           (ms[1] == Perm::simple(3, 2) && ms[2] == Perm::simple(3, 1))));
  }
  SUBCASE("d = 4 full face matches the ideal-restricted oracle") {
    const FaceType face = FaceType::full(4);
    const std::vector<Thickening> out = enumerate_balanced(4, face);
    const std::vector<Thickening> oracle = testing::balanced_by_ideal_enumeration(face);
    CHECK(out == oracle);
    CHECK(out.size() >= 1);
  }
  SUBCASE("d = 4 iota-invariant partial face {1,3}") {
    const FaceType face(4, {1, 3});
    const std::vector<Thickening> out = enumerate_balanced(4, face);
    const std::vector<Thickening> oracle = testing::balanced_by_ideal_enumeration(face);
    CHECK(out == oracle);
  }
  SUBCASE("members count and identity membership") {
    for (int d : {2, 3, 4}) {
      const FaceType face = FaceType::full(d);
      for (const Thickening& t : enumerate_balanced(d, face)) {
        CHECK(t.size() == factorial(d) / 2);
        CHECK(t.contains(Perm::identity(d)));
        CHECK_FALSE(t.contains(longest_element(d)));
        const ThickeningFlags f = classify_thickening(t, face);
        CHECK(f.downward_closed);
        CHECK(f.balanced);
        CHECK(f.stabilizer_invariant);
      }
    }
  }
  SUBCASE("non iota-invariant face is rejected") {
    CHECK_THROWS_AS(enumerate_balanced(3, FaceType(3, {1})), NotIotaInvariant);
  }
}
