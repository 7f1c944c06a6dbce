#include "homoclinic/newton.hpp"

namespace homoclinic {

NewtonResult interval_newton(const IvFn& f, const IvJac& jac, const VecD& x0,
                             const IntervalVector& X) {
  NewtonResult res;
  res.enclosure = X;
  if (!X.contains(x0)) {
    res.reason = "x0 not in X";
    return res;
  }
  if (!X.is_finite()) {
    res.reason = "X not finite";
    return res;
  }
  IntervalVector fx0 = f(IntervalVector(x0));
  IntervalMatrix dfX = jac(X);
  IntervalVector delta;
  try {
    delta = solve_linear(dfX, fx0);
  } catch (const SingularMatrixError& e) {
    res.reason = std::string("Jacobian enclosure not verifiably invertible: ") + e.what();
    return res;
  }
  IntervalVector n(X.dim());
  for (int i = 0; i < X.dim(); ++i) n[i] = Interval(x0[static_cast<size_t>(i)]) - delta[i];
  res.image_of_operator = n;
  if (!n.subset_of(X)) {
    res.reason = "N(x0,X) not contained in X";
    return res;
  }
  res.verified = true;
  auto tight = n.intersect(X);
  res.enclosure = *tight;  // nonempty since n subset of X
  return res;
}

NewtonResult interval_newton_inflate(const IvFn& f, const IvJac& jac, const VecD& x0,
                                     double r0, int max_tries) {
  const int n = static_cast<int>(x0.size());
  double r = r0;
  IntervalVector X(n);
  for (int i = 0; i < n; ++i) X[i] = Interval(x0[static_cast<size_t>(i)]).widened(r);
  NewtonResult last;
  for (int t = 0; t < max_tries; ++t) {
    last = interval_newton(f, jac, x0, X);
    if (last.verified) return last;
    if (last.image_of_operator.dim() == n) {
      // inflate around the Newton image; keeps the iteration anchored
      IntervalVector cand = IntervalVector::hull(last.image_of_operator, X);
      X = cand.widened(r * 0.5);
    } else {
      for (int i = 0; i < n; ++i) X[i] = X[i].widened(r);
    }
    r *= 2.0;
  }
  return last;
}

}  // namespace homoclinic
