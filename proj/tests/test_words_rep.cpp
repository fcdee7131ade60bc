#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "anosov/cartan.hpp"
#include "anosov/rep.hpp"
#include "anosov/rng.hpp"
#include "oracles.hpp"

using namespace anosov;

namespace {

Representation cyclic_diag(double lambda) {
  return Representation::make({{"A", Matrix{{lambda, 0.0}, {0.0, 1.0 / lambda}}}});
}

Representation schottky_strong() {
  const Matrix a{{4.0, 0.0}, {0.0, 0.25}};
  const Matrix r = testing::rotation2(M_PI / 4.0);
  const Matrix b = r * a * r.transpose();
  return Representation::make({{"A", a}, {"B", b}});
}

}  // namespace

TEST_CASE("word parsing and formatting") {
  const std::vector<std::string> names{"A", "B"};
  const Word w = parse_word("ABab", names);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == Letter{0, false});
  CHECK(w[1] == Letter{1, false});
  CHECK(w[2] == Letter{0, true});
  CHECK(w[3] == Letter{1, true});
  CHECK(word_str(w, names) == "ABab");
  CHECK(word_str({}, names) == "e");
  CHECK(parse_word("e", names).empty());
  CHECK_THROWS_AS(parse_word("AXB", names), UnknownGenerator);

  CHECK(is_reduced(parse_word("ABab", names)));
  CHECK_FALSE(is_reduced(parse_word("Aa", names)));
  CHECK(is_cyclically_reduced(parse_word("AB", names)));
  CHECK_FALSE(is_cyclically_reduced(parse_word("ABa", names)));

  CHECK(free_reduce(parse_word("ABba", names)).empty());
  CHECK(word_str(inverse_word(parse_word("ABa", names)), names) == "Aba");
  CHECK(word_str(ray_prefix(parse_word("AB", names), 5), names) == "ABABA");
  CHECK_THROWS_AS(ray_prefix(parse_word("ABa", names), 5), NotReduced);
}

TEST_CASE("reduced word counting") {
  CHECK(count_reduced_words(2, 1, 1'000'000) == 4);
  CHECK(count_reduced_words(2, 3, 1'000'000) == 4 * 3 * 3);
  CHECK(count_reduced_words(1, 5, 1'000'000) == 2);
  CHECK(count_ball(2, 3, 1'000'000) == 4 + 12 + 36);
  CHECK(count_ball(2, 40, 1'000'000) > 1'000'000);  // clamped, signals budget excess
}

TEST_CASE("evaluate") {
  const Representation rho = schottky_strong();
  SUBCASE("empty word is the identity") {
    const ScaledMatrix g = rho.evaluate({});
    CHECK((g.dense() - Matrix::identity(2)).max_abs() < 1e-14);
  }
  SUBCASE("non-reduced input is rejected") {
    CHECK_THROWS_AS(rho.evaluate(parse_word("Aa", rho.names())), NotReduced);
  }
  SUBCASE("unknown generator") {
    CHECK_THROWS_AS(rho.evaluate({Letter{5, false}}), UnknownGenerator);
  }
  SUBCASE("matches the direct product") {
    const Matrix a{{4.0, 0.0}, {0.0, 0.25}};
    const Matrix r = testing::rotation2(M_PI / 4.0);
    const Matrix b = r * a * r.transpose();
    const Matrix direct = a * b;
    const ScaledMatrix g = rho.evaluate(parse_word("AB", rho.names()));
    CHECK((g.dense() - direct).max_abs() < 1e-12 * direct.max_abs());
  }
  SUBCASE("inverse words cancel within 1e-8 per unit length") {
    // Cancellation through the product loses eps * cond(eval(w))^2, so the
    // bound is meaningful for words whose conditioning stays in double
    // range; a lambda = 1.2 pair keeps cond^2 < 1e4 through length 12.
    const Matrix a{{1.2, 0.0}, {0.0, 1.0 / 1.2}};
    const Matrix r = testing::rotation2(M_PI / 4.0);
    const Representation mild = Representation::make({{"A", a}, {"B", r * a * r.transpose()}});
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const int len = 1 + static_cast<int>(rng() % 12);
      Word w;
      while (static_cast<int>(w.size()) < len) {
        const Letter l{static_cast<int>(rng() % 2), (rng() & 1) != 0};
        if (!w.empty() && w.back() == l.inverted()) continue;
        w.push_back(l);
      }
      const ScaledMatrix p = mild.evaluate(w).times(mild.evaluate(inverse_word(w)));
      CHECK((p.dense() - Matrix::identity(2)).max_abs() < 1e-8 * len);
    }
    // Strongly proximal generators stay exact over short words.
    for (const char* text : {"A", "AB", "ABa"}) {
      const Word w = parse_word(text, rho.names());
      const ScaledMatrix p = rho.evaluate(w).times(rho.evaluate(inverse_word(w)));
      CHECK((p.dense() - Matrix::identity(2)).max_abs() < 1e-8);
    }
  }
  SUBCASE("cache returns identical results") {
    const Word w = parse_word("ABab", rho.names());
    const ScaledMatrix g1 = rho.evaluate(w);
    const ScaledMatrix g2 = rho.evaluate(w);
    CHECK((g1.m - g2.m).max_abs() == 0.0);
    CHECK(g1.log_scale == g2.log_scale);
  }
}

TEST_CASE("representation validation") {
  CHECK_THROWS_AS(Representation::make({{"A", Matrix{{2.0, 0.0}, {0.0, 1.0}}}}), NotUnimodular);
  CHECK_THROWS_AS(Representation::make({{"AB", Matrix::identity(2)}}), Error);
  CHECK_THROWS_AS(Representation::make({{"A", Matrix::identity(2)}, {"A", Matrix::identity(2)}}), Error);
}

TEST_CASE("compound matrices") {
  Rng rng(17);
  SUBCASE("multiplicativity of the second compound") {
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix a = random_gaussian(4, 4, rng);
      const Matrix b = random_gaussian(4, 4, rng);
      const Matrix lhs = compound_matrix(a * b, 2);
      const Matrix rhs = compound_matrix(a, 2) * compound_matrix(b, 2);
      CHECK((lhs - rhs).max_abs() < 1e-10 * std::max(1.0, rhs.max_abs()));
    }
  }
  SUBCASE("top compound is the determinant-graded minor matrix") {
    const Matrix a{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}};
    const Matrix c2 = compound_matrix(a, 2);
    CHECK(c2(0, 0) == doctest::Approx(6.0));   // rows {0,1} x cols {0,1}
    CHECK(c2(1, 1) == doctest::Approx(10.0));  // rows {0,2} x cols {0,2}
    CHECK(c2(2, 2) == doctest::Approx(15.0));
  }
}

TEST_CASE("word cartan accuracy") {
  SUBCASE("agrees with the dense route at moderate length") {
    const Representation rho = schottky_strong();
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      Word w;
      const int len = 1 + static_cast<int>(rng() % 5);
      while (static_cast<int>(w.size()) < len) {
        const Letter l{static_cast<int>(rng() % 2), (rng() & 1) != 0};
        if (!w.empty() && w.back() == l.inverted()) continue;
        w.push_back(l);
      }
      const CartanVector via_track = rho.word_cartan(w);
      const CartanVector via_dense = cartan_projection(rho.evaluate(w).dense());
      for (int i = 0; i < 2; ++i) {
        CHECK(via_track.components[i] == doctest::Approx(via_dense.components[i]).epsilon(1e-10));
      }
    }
  }
  SUBCASE("unipotent closed form at length 30") {
    const Representation rho = Representation::make({{"A", Matrix{{1.0, 1.0}, {0.0, 1.0}}}});
    for (int len : {1, 5, 12, 30}) {
      Word w(len, Letter{0, false});
      const CartanVector v = rho.word_cartan(w);
      const double expected = 2.0 * std::log((len + std::sqrt(static_cast<double>(len) * len + 4.0)) / 2.0);
      CHECK(v.components[0] - v.components[1] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("stays exact on powered diagonals where the dense route dies") {
    const Representation rho = cyclic_diag(4.0);
    Word w(200, Letter{0, false});  // 4^200 overflows dense doubles
    const CartanVector v = rho.word_cartan(w);
    CHECK(v.components[0] == doctest::Approx(200.0 * std::log(4.0)).epsilon(1e-13));
    CHECK(std::abs(v.sum()) < 1e-10);
  }
  SUBCASE("sym2 of a long Schottky word keeps clean gaps") {
    // Spread e^{2 c len} is far past 1/eps by len 10; the compound route
    // must still produce a sorted vector with near-zero sum.
    const Matrix a{{4.0, 0.0}, {0.0, 0.25}};
    const Matrix r = testing::rotation2(M_PI / 4.0);
    const Representation rho = Representation::make(
        {{"A", testing::sym2(a)}, {"B", testing::sym2(r * a * r.transpose())}});
    Word w;
    const std::vector<std::string> names{"A", "B"};
    for (int i = 0; i < 7; ++i) {
      w.push_back(Letter{i % 2, false});
    }
    const CartanVector v = rho.word_cartan(w);
    CHECK(std::abs(v.sum()) < 1e-9);
    CHECK(v.components[0] >= v.components[1]);
    CHECK(v.components[1] >= v.components[2]);
    CHECK(v.components[0] > 10.0);  // genuinely large spread
  }
}
