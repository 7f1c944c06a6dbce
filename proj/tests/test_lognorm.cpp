#include <doctest.h>

#include <random>

#include "homoclinic/lognorm.hpp"
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

TEST_CASE("log norm of the identity") {
  IntervalMatrix id = IntervalMatrix::identity(3);
  Interval l = log_norm(id);
  Interval m = log_min(id);
  CHECK(l.contains(1.0));
  CHECK(m.contains(1.0));
  CHECK(l.width() <= 1e-13);
  CHECK(m.width() <= 1e-13);
}

TEST_CASE("diagonal matrix") {
  IntervalMatrix a(2, 2);
  a.at(0, 0) = Interval(-1.0);
  a.at(1, 1) = Interval(-3.0);
  CHECK(log_norm(a).contains(-1.0));
  CHECK(log_min(a).contains(-3.0));
  CHECK(log_norm(a).width() <= 1e-13);
}

TEST_CASE("nilpotent 2x2: symmetric part has eigenvalues +-1/2") {
  IntervalMatrix a(2, 2);
  a.at(0, 1) = Interval(1.0);
  Interval l = log_norm(a);
  CHECK(l.contains(0.5));
  CHECK(l.hi() <= 0.5 + 1e-14);
  Interval m = log_min(a);
  CHECK(m.contains(-0.5));
}

TEST_CASE("corollary identity m_l(-A) = -l(A), 1e3 random matrices") {
  auto g = oracle::rng(53);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 2 + (t % 3);
    IntervalMatrix a(rand_mat(g, n, 2.0));
    Interval l = log_norm(a);
    Interval m = log_min(-a);
    Interval neg_l = -l;
    // the two enclosures describe the same number
    if (!m.intersects(neg_l)) ++bad;
    if (std::fabs(m.mid() + l.mid()) > 1e-10) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("symmetric point matrices against the oracle, with tightening") {
  auto g = oracle::rng(59);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int t = 0; t < 60; ++t) {
    MatD s(3, VecD(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) s[(size_t)i][(size_t)j] = s[(size_t)j][(size_t)i] = d(g);
    auto ev = oracle::sym_eigenvalues(oracle::to_lmat(s));
    long double mx = std::max({ev[0], ev[1], ev[2]});
    std::sort(ev.begin(), ev.end());
    Interval l = log_norm(IntervalMatrix(s), /*tighten=*/true);
    CHECK(l.hi() >= static_cast<double>(mx) - 1e-13);
    // Gershgorin slack bound always holds
    double slack = 0.0;
    for (int i = 0; i < 3; ++i) {
      double r = 0;
      for (int j = 0; j < 3; ++j)
        if (j != i) r += std::fabs(s[(size_t)i][(size_t)j]);
      slack = std::max(slack, r);
    }
    CHECK(l.hi() <= static_cast<double>(mx) + slack + 1e-12);
    // when the spectrum is separated the eigenpair refinement kicks in
    if (ev[1] - ev[0] > 0.1L && ev[2] - ev[1] > 0.1L)
      CHECK(l.hi() <= static_cast<double>(mx) + 1e-8);
  }
}

TEST_CASE("saddle quantity") {
  Interval s = saddle_quantity(Interval(1.0), Interval(-2.0));
  CHECK(s == Interval(-1.0));
  CHECK(sign_of(s) == SignVerdict::negative);

  // interval addition of the published eigenvalue enclosures
  Interval lu(0.249988, 0.249991);
  Interval ls(-2.999911, -2.999908);
  Interval q = saddle_quantity(lu, ls);
  CHECK(q.subset_of(Interval(-2.749923, -2.749917).widened(1e-12)));
  CHECK(sign_of(q) == SignVerdict::negative);

  Interval straddle = saddle_quantity(Interval(2.9, 3.1), Interval(-3.05, -2.95));
  CHECK(sign_of(straddle) == SignVerdict::undetermined);
}
