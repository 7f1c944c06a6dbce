#pragma once

#include <functional>
#include <string>

#include "homoclinic/box.hpp"

namespace homoclinic {

/// Interval evaluation of a map over a box. Any parameter ranges are baked
/// into the callable, so enclosures returned for a degenerate box may still
/// be thick (parametric systems).
using IvFn = std::function<IntervalVector(const IntervalVector&)>;
/// Jacobian enclosure over a box.
using IvJac = std::function<IntervalMatrix(const IntervalVector&)>;

struct NewtonResult {
  bool verified = false;
  /// N(x0,X) cap X when verified (a valid tightening), X otherwise.
  IntervalVector enclosure;
  /// The Newton image N(x0,X) = x0 - [Df(X)]^{-1} f(x0).
  IntervalVector image_of_operator;
  std::string reason;

  /// Re-assert the hypothesis of the verification from stored data alone.
  bool recheck(const IntervalVector& domain) const {
    return !verified || image_of_operator.subset_of(domain);
  }
};

/// One interval Newton test on the box X around the point x0 in X.
/// verified=true certifies a unique zero of f in X, contained in enclosure.
NewtonResult interval_newton(const IvFn& f, const IvJac& jac, const VecD& x0,
                             const IntervalVector& X);

/// Epsilon-inflation driver: grows a candidate box around x0 (starting
/// radius r0) until interval_newton verifies or max_tries is exhausted.
NewtonResult interval_newton_inflate(const IvFn& f, const IvJac& jac, const VecD& x0,
                                     double r0, int max_tries = 20);

}  // namespace homoclinic
