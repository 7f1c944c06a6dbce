#include <doctest.h>

#include <cmath>

#include "homoclinic/eigen.hpp"
#include "homoclinic/newton.hpp"
#include "homoclinic/seed.hpp"
#include "oracles.hpp"

using namespace homoclinic;

TEST_CASE("interval Newton finds sqrt(2) in [1,2]") {
  auto f = [](const IntervalVector& x) {
    return IntervalVector{x[0].sqr() - Interval(2.0)};
  };
  auto j = [](const IntervalVector& x) {
    IntervalMatrix m(1, 1);
    m.at(0, 0) = Interval(2.0) * x[0];
    return m;
  };
  IntervalVector X{Interval(1.0, 2.0)};
  NewtonResult r = interval_newton(f, j, VecD{1.5}, X);
  CHECK(r.verified);
  CHECK(r.enclosure[0].contains(std::sqrt(2.0)));
  CHECK(r.image_of_operator.subset_of(X));
  CHECK(r.recheck(X));
}

TEST_CASE("interval Newton is exact on linear systems") {
  MatD a{{2.0, 1.0}, {1.0, 3.0}};
  VecD b{3.0, 4.0};  // solution (1, 1)
  auto f = [&](const IntervalVector& x) {
    IntervalVector r(2);
    for (int i = 0; i < 2; ++i) {
      Interval s = -Interval(b[(size_t)i]);
      for (int k = 0; k < 2; ++k) s += Interval(a[(size_t)i][(size_t)k]) * x[k];
      r[i] = s;
    }
    return r;
  };
  auto j = [&](const IntervalVector&) { return IntervalMatrix(a); };
  IntervalVector X{Interval(0.0, 2.0), Interval(0.0, 2.0)};
  NewtonResult r = interval_newton(f, j, VecD{0.5, 0.5}, X);
  CHECK(r.verified);
  CHECK(r.enclosure[0].widened(1e-14).contains(1.0));
  CHECK(r.enclosure[1].widened(1e-14).contains(1.0));
  CHECK(r.enclosure[0].width() <= 1e-13);
}

TEST_CASE("non-invertible Jacobian enclosure gives a reason, not a verdict") {
  auto f = [](const IntervalVector& x) { return IntervalVector{x[0].sqr()}; };
  auto j = [](const IntervalVector& x) {
    IntervalMatrix m(1, 1);
    m.at(0, 0) = Interval(2.0) * x[0];  // contains zero over [-1,1]
    return m;
  };
  NewtonResult r = interval_newton(f, j, VecD{0.0}, IntervalVector{Interval(-1.0, 1.0)});
  CHECK_FALSE(r.verified);
  CHECK(r.reason.find("invertible") != std::string::npos);
}

TEST_CASE("N not in X gives a reason") {
  // f(x) = x - 10 on X = [0,1]: N lands near 10, far outside
  auto f = [](const IntervalVector& x) { return IntervalVector{x[0] - Interval(10.0)}; };
  auto j = [](const IntervalVector&) {
    IntervalMatrix m(1, 1);
    m.at(0, 0) = Interval(1.0);
    return m;
  };
  NewtonResult r = interval_newton(f, j, VecD{0.5}, IntervalVector{Interval(0.0, 1.0)});
  CHECK_FALSE(r.verified);
  CHECK(r.reason.find("not contained") != std::string::npos);
}

TEST_CASE("real eigenpair of diag(2,3)") {
  IntervalMatrix a(2, 2);
  a.at(0, 0) = Interval(2.0);
  a.at(1, 1) = Interval(3.0);
  EigenEnclosure e = enclose_real_eigenpair(a, 2.0, VecD{1.0, 0.0});
  REQUIRE(e.verified);
  CHECK(e.lambda_re.contains(2.0));
  CHECK(e.lambda_re.width() <= 1e-14);
  CHECK(e.fixed_index_re == 0);
  CHECK(e.vector_re[0] == Interval(1.0));
  CHECK(e.vector_re[1].widened(1e-14).contains(0.0));
  CHECK(residual_contains_zero(a, e));
}

TEST_CASE("complex pair of the rotation-scaling normal form") {
  IntervalMatrix a(2, 2);
  a.at(0, 0) = Interval(-3.0);
  a.at(0, 1) = Interval(-16.0);
  a.at(1, 0) = Interval(16.0);
  a.at(1, 1) = Interval(-3.0);
  // eigenvector for -3+16i is (1, -i)
  EigenEnclosure e = enclose_complex_eigenpair(
      a, {-3.0, 16.0}, {std::complex<double>(1.0, 0.0), std::complex<double>(0.0, -1.0)});
  REQUIRE(e.verified);
  CHECK(e.lambda_re.widened(1e-12).contains(-3.0));
  CHECK(e.lambda_im.widened(1e-12).contains(16.0));
  CHECK(e.lambda_re.width() <= 1e-12);
  CHECK(residual_contains_zero(a, e));
}

TEST_CASE("random symmetric matrices against the long-double oracle") {
  auto g = oracle::rng(41);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int t = 0; t < 60; ++t) {
    MatD s(3, VecD(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) s[(size_t)i][(size_t)j] = s[(size_t)j][(size_t)i] = d(g);
    VecD evals;
    MatD evecs;
    seed::jacobi_symmetric(s, evals, evecs);
    // skip clustered spectra, Newton legitimately fails there
    std::sort(evals.begin(), evals.end());
    if (evals[1] - evals[0] < 0.1 || evals[2] - evals[1] < 0.1) continue;
    auto oracle_ev = oracle::sym_eigenvalues(oracle::to_lmat(s));
    std::sort(oracle_ev.begin(), oracle_ev.end());
    for (int k = 0; k < 3; ++k) {
      VecD seeds;
      MatD vecs;
      seed::jacobi_symmetric(s, seeds, vecs);
      // use the eigenvector whose eigenvalue matches evals[k]
      int idx = 0;
      for (int i = 0; i < 3; ++i)
        if (std::fabs(seeds[(size_t)i] - evals[(size_t)k]) < 1e-9) idx = i;
      VecD v(3);
      for (int i = 0; i < 3; ++i) v[(size_t)i] = vecs[(size_t)i][(size_t)idx];
      EigenEnclosure e = enclose_real_eigenpair(IntervalMatrix(s), evals[(size_t)k], v);
      REQUIRE(e.verified);
      CHECK(e.lambda_re.widened(1e-15).contains(static_cast<double>(oracle_ev[(size_t)k])));
    }
  }
}

TEST_CASE("construct-then-verify complex spectra from block normal forms") {
  auto g = oracle::rng(43);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    double lam = 0.5 + d(g), rho = -2.0 + d(g), om = 3.0 + d(g);
    MatD blk{{lam, 0, 0}, {0, rho, -om}, {0, om, rho}};
    // similarity by a well-conditioned random P = I + 0.3 E
    MatD p{{1, 0.3 * d(g), 0.3 * d(g)}, {0.3 * d(g), 1, 0.3 * d(g)}, {0.3 * d(g), 0.3 * d(g), 1}};
    // A = P blk P^-1 in doubles: row_i(A) solves P^T row^T = row_i(P blk)^T
    MatD pb(3, VecD(3, 0.0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) pb[(size_t)i][(size_t)j] += p[(size_t)i][(size_t)k] * blk[(size_t)k][(size_t)j];
    MatD pt(3, VecD(3));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) pt[(size_t)r][(size_t)c] = p[(size_t)c][(size_t)r];
    MatD a(3, VecD(3));
    for (int i = 0; i < 3; ++i) a[(size_t)i] = seed::solve(pt, pb[(size_t)i]);
    auto pairs = seed::eig_small(a);
    for (const auto& pr : pairs) {
      if (std::fabs(pr.lambda.imag()) < 1e-9) {
        VecD v(3);
        for (int i = 0; i < 3; ++i) v[(size_t)i] = pr.vec[(size_t)i].real();
        EigenEnclosure e = enclose_real_eigenpair(IntervalMatrix(a), pr.lambda.real(), v);
        REQUIRE(e.verified);
        CHECK(e.lambda_re.widened(1e-8).contains(lam));
        CHECK(residual_contains_zero(IntervalMatrix(a), e));
      } else if (pr.lambda.imag() > 0) {
        EigenEnclosure e = enclose_complex_eigenpair(IntervalMatrix(a), pr.lambda, pr.vec);
        REQUIRE(e.verified);
        CHECK(e.lambda_re.widened(1e-8).contains(rho));
        CHECK(e.lambda_im.widened(1e-8).contains(om));
        CHECK(residual_contains_zero(IntervalMatrix(a), e));
      }
    }
  }
}
