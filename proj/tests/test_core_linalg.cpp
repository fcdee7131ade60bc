#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "anosov/cartan.hpp"
#include "anosov/rng.hpp"
#include "anosov/svd.hpp"
#include "oracles.hpp"

using namespace anosov;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

Matrix exp_diag(const CartanVector& v) {
  Matrix m(v.dim(), v.dim());
  for (int i = 0; i < v.dim(); ++i) m(i, i) = std::exp(v.components[i]);
  return m;
}

}  // namespace

TEST_CASE("svd reproduces the input and is orthogonal") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const Matrix a = random_gaussian(d, d, rng);
    const SVDResult s = svd(a);
    Matrix recomposed = s.u;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) recomposed(i, j) *= s.sigma[j];
    recomposed = recomposed * s.v.transpose();
    CHECK(max_abs_diff(recomposed, a) < 1e-12 * std::max(1.0, a.max_abs()));
    CHECK(max_abs_diff(s.u.transpose() * s.u, Matrix::identity(d)) < 1e-13);
    CHECK(max_abs_diff(s.v.transpose() * s.v, Matrix::identity(d)) < 1e-13);
    for (size_t i = 1; i < s.sigma.size(); ++i) CHECK(s.sigma[i] <= s.sigma[i - 1]);
  }
}

TEST_CASE("svd relative accuracy at condition 1e8") {
  Rng rng(11);
  Matrix d(3, 3);
  d(0, 0) = 1e4;
  d(1, 1) = 1.0;
  d(2, 2) = 1e-4;

  SUBCASE("graded input: singular values well determined by the entries") {
    // Q*D and D*Q have column- resp. row-scaled condition 1; here relative
    // 1e-10 is meaningful and required.
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix q = random_orthogonal(3, rng);
      for (const Matrix& a : {q * d, d * q}) {
        const SVDResult s = svd(a);
        CHECK(std::abs(s.sigma[0] - 1e4) / 1e4 < 1e-10);
        CHECK(std::abs(s.sigma[1] - 1.0) < 1e-10);
        CHECK(std::abs(s.sigma[2] - 1e-4) / 1e-4 < 1e-10);
      }
    }
  }
  SUBCASE("full two-sided rotation: limited by the entrywise information bound") {
    // For Q1*D*Q2 the entries determine sigma_min only to ~eps * cond, so
    // the honest bound at cond 1e8 is ~1e-8 relative.
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = random_orthogonal(3, rng) * d * random_orthogonal(3, rng);
      const SVDResult s = svd(a);
      const std::vector<long double> exact = testing::singular_values_extended(a);
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(static_cast<double>((s.sigma[i] - exact[i]) / exact[i])) < 3e-8);
      }
    }
  }
}

TEST_CASE("cartan projection on stock examples") {
  SUBCASE("diagonal") {
    const CartanVector v = cartan_projection(Matrix{{3.0, 0.0}, {0.0, 1.0 / 3.0}});
    CHECK(v.components[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(v.components[1] == doctest::Approx(-std::log(3.0)).epsilon(1e-12));
  }
  SUBCASE("identity in several dimensions") {
    for (int d = 2; d <= 6; ++d) {
      const CartanVector v = cartan_projection(Matrix::identity(d));
      for (double x : v.components) CHECK(std::abs(x) < 1e-14);
    }
  }
  SUBCASE("golden ratio matrix") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const CartanVector v = cartan_projection(Matrix{{2.0, 1.0}, {1.0, 1.0}});
    CHECK(std::abs(v.components[0] - 2.0 * std::log(phi)) < 1e-12);
    CHECK(std::abs(v.components[1] + 2.0 * std::log(phi)) < 1e-12);
  }
}

TEST_CASE("cartan projection properties on random unimodular matrices") {
  Rng rng(23);
  const Tolerances tol;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Matrix g = random_unimodular(d, rng, 1e6);
    const CartanVector v = cartan_projection(g);

    CAPTURE(trial);
    CHECK(std::abs(v.sum()) < tol.sum_tol);

    // inversion symmetry via an explicitly inverted matrix
    const CartanVector vi = cartan_projection(inverse(g));
    for (int i = 0; i < d; ++i) {
      CHECK(vi.components[i] == doctest::Approx(-v.components[d - 1 - i]).epsilon(1e-8).scale(1.0));
    }

    // bi-invariance under the maximal compact
    const Matrix k1 = random_orthogonal(d, rng);
    const Matrix k2 = random_orthogonal(d, rng);
    const CartanVector vk = cartan_projection(k1 * g * k2);
    for (int i = 0; i < d; ++i) CHECK(std::abs(vk.components[i] - v.components[i]) < 1e-9);
  }
}

TEST_CASE("cartan projection error paths") {
  CHECK_THROWS_AS(cartan_projection(Matrix{{1.0, 0.0}, {0.0, 0.0}}), SingularInput);
  Matrix bad(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cartan_projection(bad), NonFinite);
  CHECK_THROWS_AS(cartan_projection(Matrix(2, 3)), DimMismatch);
}

TEST_CASE("kak recomposition") {
  SUBCASE("identity") {
    const KAKDecomposition r = kak(Matrix::identity(4));
    CHECK(max_abs_diff(r.k1 * exp_diag(r.a) * r.k2, Matrix::identity(4)) < 1e-14);
    for (double x : r.a.components) CHECK(std::abs(x) < 1e-14);
  }
  SUBCASE("diagonal with signed permutation factors") {
    const Matrix g{{4.0, 0.0}, {0.0, 0.25}};
    const KAKDecomposition r = kak(g);
    CHECK(r.a.components[0] == doctest::Approx(std::log(4.0)));
    CHECK(r.a.components[1] == doctest::Approx(-std::log(4.0)));
    CHECK(max_abs_diff(r.k1 * exp_diag(r.a) * r.k2, g) < 1e-12);
  }
  SUBCASE("1000 random unimodular matrices") {
    Rng rng(31);
    const Tolerances tol;
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = 2 + static_cast<int>(rng() % 2);
      const Matrix g = random_unimodular(d, rng, 1e8);
      const KAKDecomposition r = kak(g);
      CHECK(max_abs_diff(r.k1 * exp_diag(r.a) * r.k2, g) < tol.recompose_tol * std::max(1.0, g.max_abs()));
      const CartanVector v = cartan_projection(g);
      for (int i = 0; i < d; ++i) CHECK(std::abs(r.a.components[i] - v.components[i]) < 1e-12);
    }
  }
}

TEST_CASE("root gaps") {
  SUBCASE("d = 2 single root") {
    const CartanVector v = cartan_projection(Matrix{{3.0, 0.0}, {0.0, 1.0 / 3.0}});
    const std::vector<double> gaps = root_gaps(v, FaceType(2, {1}));
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == doctest::Approx(2.0 * std::log(3.0)));
  }
  SUBCASE("zero vector") {
    const std::vector<double> gaps = root_gaps(cartan_projection(Matrix::identity(3)), FaceType(3, {1, 2}));
    for (double g : gaps) CHECK(std::abs(g) < 1e-14);
  }
  SUBCASE("diag(4,2,1/8)") {
    const CartanVector v = cartan_projection(Matrix{{4, 0, 0}, {0, 2, 0}, {0, 0, 0.125}});
    const std::vector<double> gaps = root_gaps(v, FaceType(3, {1, 2}));
    CHECK(gaps[0] == doctest::Approx(std::log(2.0)));
    CHECK(gaps[1] == doctest::Approx(std::log(16.0)));
  }
  SUBCASE("bad pivot") {
    CHECK_THROWS_AS(FaceType(3, {3}), BadFace);
    CHECK_THROWS_AS(root_gaps(cartan_projection(Matrix::identity(3)), FaceType(4, {3})), DimMismatch);
  }
}

TEST_CASE("make_unimodular and determinants") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = random_unimodular(3, rng);
    CHECK(std::abs(determinant(g) - 1.0) < 1e-9);
    int sign = 0;
    CHECK(std::abs(log_abs_determinant(g, &sign)) < 1e-9);
    CHECK(sign == 1);
  }
  CHECK_THROWS_AS(make_unimodular(Matrix{{-1.0, 0.0}, {0.0, 1.0}}), SingularInput);
}

TEST_CASE("scaled matrices track long products without overflow") {
  const Matrix a{{4.0, 0.0}, {0.0, 0.25}};
  const ScaledMatrix s = ScaledMatrix::from(a);

  SUBCASE("power matches dense computation in the safe range") {
    const ScaledMatrix p = s.power(10);
    const double expected = 10.0 * std::log(4.0);
    const CartanVector v = cartan_projection(p);
    CHECK(v.components[0] == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("powers far beyond dense range") {
    const ScaledMatrix p = s.power(400);  // 4^400 overflows doubles
    const CartanVector v = cartan_projection(p);
    CHECK(v.components[0] == doctest::Approx(400.0 * std::log(4.0)).epsilon(1e-12));
  }
  SUBCASE("inverse") {
    const ScaledMatrix inv = s.inverse_scaled();
    const ScaledMatrix prod = s.times(inv);
    CHECK(max_abs_diff(prod.dense(), Matrix::identity(2)) < 1e-13);
  }
}

TEST_CASE("cartan projection agrees with the Gram oracle") {
  Rng rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix g = random_unimodular(3, rng, 1e6);
    const CartanVector v = cartan_projection(g);
    const std::vector<double> oracle = testing::gram_log_singular_values(g);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(v.components[i] - oracle[i]) < 1e-7);
  }
}
