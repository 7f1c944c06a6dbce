#include <doctest.h>

#include <random>

#include "homoclinic/box.hpp"
#include "oracles.hpp"

using namespace homoclinic;

namespace {

MatD rand_mat(std::mt19937_64& g, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  MatD a(static_cast<size_t>(n), VecD(static_cast<size_t>(n)));
  for (auto& row : a)
    for (auto& x : row) x = d(g);
  return a;
}

}  // namespace

TEST_CASE("identity inverse within one ulp per entry") {
  IntervalMatrix id = IntervalMatrix::identity(3);
  IntervalMatrix inv = mat_inverse(id);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double want = i == j ? 1.0 : 0.0;
      CHECK(inv.at(i, j).contains(want));
      CHECK(inv.at(i, j).width() <= 4e-16);
    }
}

TEST_CASE("diagonal interval inverse") {
  IntervalMatrix m(2, 2);
  m.at(0, 0) = Interval(2.0);
  m.at(1, 1) = Interval(4.0);
  IntervalMatrix inv = mat_inverse(m);
  CHECK(inv.at(0, 0).contains(0.5));
  CHECK(inv.at(1, 1).contains(0.25));
  CHECK(inv.at(0, 1).contains(0.0));
}

TEST_CASE("A * inverse(A) encloses the identity, 100 random 3x3") {
  auto g = oracle::rng(3);
  int done = 0;
  while (done < 100) {
    MatD a = rand_mat(g, 3, 2.0);
    IntervalMatrix am(a);
    IntervalMatrix inv;
    try {
      inv = mat_inverse(am);
    } catch (const SingularMatrixError&) {
      continue;  // skip the rare near-singular draw
    }
    IntervalMatrix prod = mat_mul(am, inv);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(prod.at(i, j).contains(i == j ? 1.0 : 0.0));
    ++done;
  }
}

TEST_CASE("pivot containing zero is reported as not verifiably invertible") {
  IntervalMatrix m(2, 2);
  m.at(0, 0) = Interval(-1.0, 1.0);
  m.at(0, 1) = Interval(-1.0, 1.0);
  m.at(1, 0) = Interval(-1.0, 1.0);
  m.at(1, 1) = Interval(-1.0, 1.0);
  CHECK_THROWS_AS(mat_inverse(m), SingularMatrixError);
}

TEST_CASE("euclidean norm of (3,4) contains 5") {
  IntervalVector v{Interval(3.0), Interval(4.0)};
  Interval n = euclid_norm_bound(v);
  CHECK(n.contains(5.0));
  CHECK(n.width() <= 1e-14);
}

TEST_CASE("operator norm of the identity") {
  Interval n = op_norm_bound(IntervalMatrix::identity(3));
  CHECK(n.contains(1.0));
  CHECK(n.width() <= 1e-12);
}

TEST_CASE("operator norm bound contains sigma_max, random point matrices") {
  auto g = oracle::rng(17);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + (t % 3);
    MatD a = rand_mat(g, n, 3.0);
    Interval bound = op_norm_bound(IntervalMatrix(a));
    long double smax = oracle::sigma_max(a);
    CHECK(bound.lo() <= static_cast<double>(smax) * (1 + 1e-14));
    CHECK(static_cast<double>(smax) <= bound.hi() * (1 + 1e-14));
  }
}

TEST_CASE("linear solve encloses the true solution") {
  auto g = oracle::rng(29);
  for (int t = 0; t < 50; ++t) {
    MatD a = rand_mat(g, 3, 2.0);
    a[0][0] += 4.0;  // diagonally dominant enough to avoid singular draws
    a[1][1] += 4.0;
    a[2][2] += 4.0;
    VecD x{1.0, -2.0, 0.5};
    // b = A x in long double
    IntervalVector b(3);
    for (int i = 0; i < 3; ++i) {
      long double s = 0;
      for (int j = 0; j < 3; ++j) s += (long double)a[(size_t)i][(size_t)j] * (long double)x[(size_t)j];
      // bracket the long double product
      double mid = static_cast<double>(s);
      b[i] = Interval(mid).widened(1e-12);
    }
    IntervalVector sol = solve_linear(IntervalMatrix(a), b);
    for (int i = 0; i < 3; ++i) CHECK(sol[i].widened(1e-9).contains(x[(size_t)i]));
  }
}

TEST_CASE("matrix product containment monotonicity") {
  auto g = oracle::rng(31);
  for (int t = 0; t < 100; ++t) {
    MatD a = rand_mat(g, 3), b = rand_mat(g, 3);
    IntervalMatrix wide_a(3, 3), wide_b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        wide_a.at(i, j) = Interval(a[(size_t)i][(size_t)j]).widened(0.1);
        wide_b.at(i, j) = Interval(b[(size_t)i][(size_t)j]).widened(0.1);
      }
    IntervalMatrix tight = mat_mul(IntervalMatrix(a), IntervalMatrix(b));
    IntervalMatrix wide = mat_mul(wide_a, wide_b);
    CHECK(wide.contains(tight));
  }
}
