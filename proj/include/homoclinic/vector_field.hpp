#pragma once

#include <memory>

#include "homoclinic/box.hpp"
#include "homoclinic/taylor.hpp"

namespace homoclinic {

/// A parameter-dependent autonomous vector field p' = f(p, theta) with
/// interval evaluations, an exact-by-construction Jacobian, and Taylor-jet
/// evaluations for the rigorous integrator. The parameter enclosure is part
/// of the instance: all interval evaluations range over it.
///
/// The declared unstable/stable split refers to coordinates: the leading
/// unstable_dim coordinates are the (rough) expanding directions.
class VectorField {
 public:
  VectorField(int state_dim, int unstable_dim, Interval param)
      : n_(state_dim), u_(unstable_dim), theta_(param) {}
  virtual ~VectorField() = default;

  int state_dim() const { return n_; }
  int unstable_dim() const { return u_; }
  int stable_dim() const { return n_ - u_; }
  const Interval& param_range() const { return theta_; }

  /// Same field with a different parameter enclosure (must be a subset use
  /// case; not enforced).
  virtual std::shared_ptr<VectorField> with_param(const Interval& theta) const = 0;

  virtual IntervalVector evaluate(const IntervalVector& state) const = 0;
  /// n x n Jacobian enclosure with respect to the state over the box.
  virtual IntervalMatrix state_jacobian(const IntervalVector& state) const = 0;
  /// Enclosure of the partial derivative with respect to the parameter.
  virtual IntervalVector param_derivative(const IntervalVector& state) const = 0;

  /// Field value as Taylor series along a trajectory jet: inputs valid
  /// through order k produce outputs valid through order k.
  virtual TSeriesVec eval_series(const TSeriesVec& u) const = 0;
  /// State-Jacobian entries as Taylor series along a trajectory jet.
  virtual TSeriesMat jac_series(const TSeriesVec& u) const = 0;
  /// Parameter-derivative column as Taylor series along a trajectory jet.
  virtual TSeriesVec param_derivative_series(const TSeriesVec& u) const = 0;

  /// Nonrigorous evaluations for seeds and plotting.
  virtual VecD evaluate_d(const VecD& state) const = 0;
  virtual MatD jacobian_d(const VecD& state) const = 0;

  /// n x (n+1) Jacobian over (state, parameter).
  IntervalMatrix full_jacobian(const IntervalVector& state) const {
    IntervalMatrix j = state_jacobian(state);
    IntervalVector dtheta = param_derivative(state);
    IntervalMatrix r(n_, n_ + 1);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < n_; ++k) r.at(i, k) = j.at(i, k);
      r.at(i, n_) = dtheta[i];
    }
    return r;
  }

 protected:
  int n_, u_;
  Interval theta_;
};

using FieldPtr = std::shared_ptr<const VectorField>;

/// Negated field: swaps the roles of stable and unstable directions.
FieldPtr reverse_time(const FieldPtr& f);

/// Appends the parameter as a state coordinate with zero dynamics:
/// (p', theta~') = (f(p, theta0 + scale * theta~), 0). The new coordinate is
/// placed last and counted in the unstable block (it is a center direction
/// for the cone machinery). `scale` rescales the parameter axis; the raw
/// parameter enclosure maps to theta~ in [-rad(Theta)/scale, rad(Theta)/scale].
FieldPtr extend_with_parameter(const FieldPtr& f, double scale);

/// Affine chart (X = C x + q0) with a rigorous inverse enclosure.
struct LocalChart {
  VecD q0;
  MatD C;
  IntervalMatrix C_int;
  IntervalMatrix C_inv_enclosure;

  LocalChart() = default;
  LocalChart(VecD q0_, MatD C_);

  int dim() const { return static_cast<int>(q0.size()); }
  IntervalVector to_local(const IntervalVector& world) const;
  IntervalVector from_local(const IntervalVector& local) const;
  VecD to_local_d(const VecD& world) const;
  VecD from_local_d(const VecD& local) const;
};

/// Conjugated field g(z) = C^{-1} f(C z + q0, theta) in chart coordinates.
FieldPtr to_local_field(const FieldPtr& f, const LocalChart& chart);

}  // namespace homoclinic
