#include <doctest.h>

#include <random>

#include "homoclinic/config.hpp"
#include "homoclinic/eigen.hpp"
#include "homoclinic/lorenz84.hpp"
#include "homoclinic/newton.hpp"
#include "homoclinic/seed.hpp"
#include "oracles.hpp"

using namespace homoclinic;

namespace {

FieldPtr paper_field() {
  return std::make_shared<Lorenz84Field>(
      Interval::from_decimal("0.25"), Interval::from_decimal("4"),
      Interval::from_decimal("4"),
      Interval(Interval::from_decimal("0.0752761095").lo(),
               Interval::from_decimal("0.07527611625").hi()));
}

LocalChart paper_chart() {
  VecD q0{3.9999144643281, -0.00085219497131102, 0.0045450722448356};
  MatD C{{-1, -0.00016604653053618, 0.00040407899883959},
         {-0.00016384655297642, -0.28235213046095, 0.71764786953905},
         {0.0011562746220118, 0.71764798264861, 0.28235189601999}};
  return LocalChart(q0, C);
}

}  // namespace

TEST_CASE("field at the origin is (aF, G, 0)") {
  FieldPtr f = paper_field();
  IntervalVector v = f->evaluate(IntervalVector(VecD{0.0, 0.0, 0.0}));
  CHECK(v[0].contains(1.0));  // aF = 0.25 * 4
  CHECK(v[0].width() <= 1e-15);
  CHECK(v[1].subset_of(f->param_range().widened(1e-15)));
  CHECK(v[2] == Interval(0.0));
}

TEST_CASE("interval evaluation contains pointwise samples") {
  FieldPtr f = paper_field();
  auto g = oracle::rng(61);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  IntervalVector box{Interval(3.0, 5.0), Interval(-0.5, 0.5), Interval(-0.5, 0.5)};
  IntervalVector img = f->evaluate(box);
  for (int t = 0; t < 1000; ++t) {
    VecD p{4.0 + d(g), 0.5 * d(g), 0.5 * d(g)};
    VecD v = f->evaluate_d(p);
    for (int i = 0; i < 3; ++i) CHECK(img[i].widened(1e-12).contains(v[(size_t)i]));
  }
}

TEST_CASE("jacobian encloses central finite differences") {
  FieldPtr f = paper_field()->with_param(Interval(0.0752761095));
  auto g = oracle::rng(67);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double h = 1e-6;
  for (int t = 0; t < 1000; ++t) {
    VecD p{4.0 + d(g), d(g), d(g)};
    IntervalVector tight(3);
    for (int i = 0; i < 3; ++i) tight[i] = Interval(p[(size_t)i]).widened(h);
    IntervalMatrix jm = f->state_jacobian(tight);
    for (int j = 0; j < 3; ++j) {
      VecD pp = p, pm = p;
      pp[(size_t)j] += h;
      pm[(size_t)j] -= h;
      VecD fp = f->evaluate_d(pp), fm = f->evaluate_d(pm);
      for (int i = 0; i < 3; ++i) {
        double fd = (fp[(size_t)i] - fm[(size_t)i]) / (2 * h);
        // quadratic field: central differences are exact up to roundoff
        CHECK(jm.at(i, j).widened(1e-7).contains(fd));
      }
    }
  }
}

TEST_CASE("chart round trip and rigor") {
  LocalChart chart = paper_chart();
  IntervalMatrix prod = mat_mul(chart.C_int, chart.C_inv_enclosure);
  CHECK(prod.contains(MatD{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));

  auto g = oracle::rng(71);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    VecD p{4.0 + d(g), d(g), d(g)};
    IntervalVector back = chart.from_local(chart.to_local(IntervalVector(p)));
    CHECK(back.contains(p));
    CHECK(back.max_width() <= 1e-12);
  }
  IntervalVector zero = chart.to_local(IntervalVector(chart.q0));
  for (int i = 0; i < 3; ++i) CHECK(zero[i].widened(1e-14).contains(0.0));
}

TEST_CASE("paper fixed point sits near the chart origin") {
  LocalChart chart = paper_chart();
  FieldPtr f = reverse_time(paper_field());
  VecD x0 = seed::newton([&](const VecD& p) { return f->evaluate_d(p); },
                         [&](const VecD& p) { return f->jacobian_d(p); }, chart.q0);
  NewtonResult nr = interval_newton_inflate(
      [&](const IntervalVector& x) { return f->evaluate(x); },
      [&](const IntervalVector& x) { return f->state_jacobian(x); }, x0, 1e-10);
  REQUIRE(nr.verified);
  IntervalVector loc = chart.to_local(nr.enclosure);
  CHECK(euclid_norm_bound(loc).hi() < 1e-4);
  // field enclosure at the fixed point contains zero
  IntervalVector fv = paper_field()->evaluate(nr.enclosure);
  for (int i = 0; i < 3; ++i) CHECK(fv[i].contains(0.0));
}

TEST_CASE("reverse twice is the identity; eigenvalues negate") {
  FieldPtr f = paper_field();
  FieldPtr rr = reverse_time(reverse_time(f));
  IntervalVector box{Interval(3.9, 4.1), Interval(-0.1, 0.1), Interval(-0.1, 0.1)};
  IntervalVector a = f->evaluate(box), b = rr->evaluate(box);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);
  CHECK(f->unstable_dim() == reverse_time(f)->stable_dim());

  MatD saddle{{1, 0}, {0, -1}};
  LinearField lin(saddle, VecD{0, 0}, VecD{0, 0}, 1, Interval(0.0));
  IntervalMatrix jr = reverse_time(std::make_shared<LinearField>(lin))
                          ->state_jacobian(IntervalVector(VecD{0, 0}));
  CHECK(jr.at(0, 0) == Interval(-1.0));
  CHECK(jr.at(1, 1) == Interval(1.0));

  // Lorenz-84 at the fixed point: forward and reversed eigenvalues negate
  FieldPtr rev = reverse_time(paper_field());
  VecD x0 = seed::newton([&](const VecD& p) { return rev->evaluate_d(p); },
                         [&](const VecD& p) { return rev->jacobian_d(p); },
                         VecD{4.0, -0.001, 0.005});
  NewtonResult nr = interval_newton_inflate(
      [&](const IntervalVector& x) { return rev->evaluate(x); },
      [&](const IntervalVector& x) { return rev->state_jacobian(x); }, x0, 1e-10);
  REQUIRE(nr.verified);
  IntervalMatrix af = paper_field()->state_jacobian(nr.enclosure);
  IntervalMatrix ar = rev->state_jacobian(nr.enclosure);
  auto pf = seed::eig_small(af.mid());
  for (const auto& pr : pf) {
    if (std::fabs(pr.lambda.imag()) > 1e-9) continue;
    VecD v(3);
    for (int i = 0; i < 3; ++i) v[(size_t)i] = pr.vec[(size_t)i].real();
    EigenEnclosure ef = enclose_real_eigenpair(af, pr.lambda.real(), v);
    EigenEnclosure er = enclose_real_eigenpair(ar, -pr.lambda.real(), v);
    REQUIRE(ef.verified);
    REQUIRE(er.verified);
    CHECK(er.lambda_re.intersects(-ef.lambda_re));
  }
}

TEST_CASE("parameter extension has zero dynamics in the last coordinate") {
  FieldPtr f = paper_field();
  FieldPtr ext = extend_with_parameter(f, 1e-3);
  IntervalVector box{Interval(3.9, 4.1), Interval(-0.1, 0.1), Interval(-0.1, 0.1),
                     Interval(-1.0, 1.0)};
  IntervalVector v = ext->evaluate(box);
  CHECK(v[3] == Interval(0.0));
  IntervalMatrix j = ext->state_jacobian(box);
  for (int k = 0; k < 4; ++k) CHECK(j.at(3, k) == Interval(0.0));
  // the theta column scales the raw parameter derivative
  CHECK(j.at(1, 3).contains(1e-3));
}

TEST_CASE("local fixed point reproduces the world box") {
  LocalChart chart = paper_chart();
  FieldPtr rev = reverse_time(paper_field());
  FieldPtr loc = to_local_field(rev, chart);
  NewtonResult nl = interval_newton_inflate(
      [&](const IntervalVector& x) { return loc->evaluate(x); },
      [&](const IntervalVector& x) { return loc->state_jacobian(x); },
      VecD{0.0, 0.0, 0.0}, 1e-10);
  REQUIRE(nl.verified);
  NewtonResult nw = interval_newton_inflate(
      [&](const IntervalVector& x) { return rev->evaluate(x); },
      [&](const IntervalVector& x) { return rev->state_jacobian(x); }, chart.q0, 1e-10);
  REQUIRE(nw.verified);
  IntervalVector mapped = chart.from_local(nl.enclosure);
  CHECK(mapped.intersect(nw.enclosure).has_value());
}
