#include <doctest.h>

#include <random>

#include "homoclinic/interval.hpp"
#include "oracles.hpp"

using namespace homoclinic;

namespace {

double rand_rational(std::mt19937_64& g) {
  std::uniform_int_distribution<int> num(-1000, 1000);
  std::uniform_int_distribution<int> den(1, 1000);
  return static_cast<double>(num(g)) / static_cast<double>(den(g));
}

Interval rand_interval(std::mt19937_64& g) {
  double a = rand_rational(g), b = rand_rational(g);
  return Interval::hull(a, b);
}

}  // namespace

TEST_CASE("construction and invariants") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
  Interval v(1.0, 2.0);
  CHECK(v.contains(1.5));
  CHECK(v.is_finite());
  CHECK_FALSE(Interval::entire().is_finite());
}

TEST_CASE("exact integer endpoint arithmetic") {
  Interval a(1.0, 2.0), b(3.0, 4.0);
  Interval s = a + b;
  CHECK(s.lo() == 4.0);  // exact sums stay exact
  CHECK(s.hi() == 6.0);
  Interval p = Interval(-1.0, 1.0) * Interval(-1.0, 1.0);
  CHECK(p.lo() == -1.0);
  CHECK(p.hi() == 1.0);
  Interval z = Interval(0.0) * Interval(-5.0, 7.0);
  CHECK(z.lo() == 0.0);  // exact zero preserved
  CHECK(z.hi() == 0.0);
}

TEST_CASE("one third against the extended-precision oracle") {
  Interval q = Interval(1.0) / Interval(3.0);
  oracle::Big third = oracle::Big(1.0) / oracle::Big(3.0);
  CHECK(third.inside(q));
  CHECK(q.width() <= 2.0 * (next_up(q.lo()) - q.lo()));
}

TEST_CASE("hull") {
  Interval h = Interval::hull(Interval(0.0, 1.0), Interval(2.0, 3.0));
  CHECK(h.lo() == 0.0);
  CHECK(h.hi() == 3.0);
  Interval same = Interval::hull(Interval(1.0, 2.0), Interval(1.0, 2.0));
  CHECK(same == Interval(1.0, 2.0));
  auto g = oracle::rng(7);
  for (int i = 0; i < 200; ++i) {
    Interval a = rand_interval(g), b = rand_interval(g);
    Interval h2 = Interval::hull(a, b);
    CHECK(h2.lo() == std::min(a.lo(), b.lo()));
    CHECK(h2.hi() == std::max(a.hi(), b.hi()));
  }
}

TEST_CASE("division by zero-containing interval is an error") {
  CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Interval(1.0) / Interval(0.0), std::domain_error);
}

TEST_CASE("containment monotonicity, 1e4 random cases") {
  auto g = oracle::rng(13);
  std::uniform_real_distribution<double> shrink(0.0, 0.49);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    Interval a = rand_interval(g), b = rand_interval(g);
    // sub-intervals
    double sa = shrink(g), sb = shrink(g);
    Interval a2(a.lo() + sa * a.width(), a.hi() - sa * a.width());
    Interval b2(b.lo() + sb * b.width(), b.hi() - sb * b.width());
    if (!(a2 + b2).subset_of(a + b)) ++violations;
    if (!(a2 - b2).subset_of(a - b)) ++violations;
    if (!(a2 * b2).subset_of(a * b)) ++violations;
    if (!b.contains(0.0)) {
      if (!(a2 / b2).subset_of(a / b)) ++violations;
    }
    if (!a2.sqr().subset_of(a.sqr())) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("every op contains the extended-precision result, 1e4 rationals") {
  auto g = oracle::rng(99);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = rand_rational(g), y = rand_rational(g);
    Interval a(x), b(y);
    oracle::Big bx(x), by(y);
    if (!(bx + by).inside(a + b)) ++bad;
    if (!(bx - by).inside(a - b)) ++bad;
    if (!(bx * by).inside(a * b)) ++bad;
    if (y != 0.0 && !(bx / by).inside(a / b)) ++bad;
    if (!(bx * bx).inside(a.sqr())) ++bad;
    if (x >= 0.0 && !bx.sqrt().inside(a.sqrt())) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("point-interval consistency: widths stay within a few ulp") {
  auto g = oracle::rng(21);
  for (int i = 0; i < 1000; ++i) {
    double x = rand_rational(g), y = rand_rational(g);
    Interval s = Interval(x) + Interval(y);
    double ulp = next_up(std::fabs(s.lo())) - std::fabs(s.lo());
    CHECK(s.width() <= 2 * ulp + 1e-300);
    Interval p = Interval(x) * Interval(y);
    double ulp2 = next_up(std::fabs(p.lo()) + 1e-300) - std::fabs(p.lo());
    CHECK(p.width() <= 2 * ulp2 + 1e-300);
  }
}

TEST_CASE("decimal parsing rounds outward") {
  Interval exact = Interval::from_decimal("0.25");
  CHECK(exact.is_point());
  CHECK(exact.lo() == 0.25);
  Interval tenth = Interval::from_decimal("0.1");
  CHECK(tenth.width() > 0.0);
  CHECK(tenth.width() <= next_up(0.1) - 0.1 + 1e-300);
  oracle::Big t = oracle::Big(1.0) / oracle::Big(10.0);
  CHECK(t.inside(tenth));
  Interval sci = Interval::from_decimal("1e-4");
  oracle::Big s = oracle::Big(1.0) / oracle::Big(10000.0);
  CHECK(s.inside(sci));
  CHECK_THROWS_AS(Interval::from_decimal("not-a-number"), std::invalid_argument);
  CHECK_THROWS_AS(Interval::from_decimal("1.5x"), std::invalid_argument);
}

TEST_CASE("square and sqrt") {
  Interval s = Interval(-1.0, 1.0).sqr();
  CHECK(s.lo() == 0.0);
  CHECK(s.hi() == 1.0);
  Interval r = Interval(4.0, 9.0).sqrt();
  CHECK(r.contains(2.0));
  CHECK(r.contains(3.0));
  CHECK(r.width() <= 1.0 + 1e-12);
  CHECK_THROWS_AS(Interval(-1.0, 1.0).sqrt(), std::domain_error);
}

TEST_CASE("overflow produces a non-finite sentinel, flagged") {
  Interval big(1e308);
  Interval sum = big + big;
  CHECK_FALSE(sum.is_finite());
}
