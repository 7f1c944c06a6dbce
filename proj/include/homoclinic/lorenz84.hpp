#pragma once

#include "homoclinic/vector_field.hpp"

namespace homoclinic {

/// The Lorenz-84 atmospheric circulation field
///   X' = -Y^2 - Z^2 - aX + aF
///   Y' = XY - bXZ - Y + G
///   Z' = bXY + XZ - Z
/// with G as the free parameter. At the saddle-focus equilibrium studied
/// here the forward-time field has a 2-D unstable focus and a 1-D stable
/// direction; the declared split reflects that, and reverse_time yields the
/// 1-D-unstable orientation the manifold machinery expects.
class Lorenz84Field final : public VectorField {
 public:
  Lorenz84Field(Interval a, Interval b, Interval F, Interval G)
      : VectorField(3, 2, G), a_(a), b_(b), F_(F) {}

  std::shared_ptr<VectorField> with_param(const Interval& g) const override {
    return std::make_shared<Lorenz84Field>(a_, b_, F_, g);
  }

  IntervalVector evaluate(const IntervalVector& s) const override;
  IntervalMatrix state_jacobian(const IntervalVector& s) const override;
  IntervalVector param_derivative(const IntervalVector& s) const override;
  TSeriesVec eval_series(const TSeriesVec& u) const override;
  TSeriesMat jac_series(const TSeriesVec& u) const override;
  TSeriesVec param_derivative_series(const TSeriesVec& u) const override;
  VecD evaluate_d(const VecD& s) const override;
  MatD jacobian_d(const VecD& s) const override;

  const Interval& a() const { return a_; }
  const Interval& b() const { return b_; }
  const Interval& F() const { return F_; }

 private:
  Interval a_, b_, F_;
};

/// Affine field p' = A p + b + theta * c, handy for tests and synthetic
/// examples. The declared unstable dimension is caller-supplied.
class LinearField final : public VectorField {
 public:
  LinearField(MatD A, VecD b, VecD c, int unstable_dim, Interval theta)
      : VectorField(static_cast<int>(A.size()), unstable_dim, theta),
        A_(IntervalMatrix(A)), Ad_(std::move(A)), bd_(std::move(b)), cd_(std::move(c)) {
    b_ = IntervalVector(bd_);
    c_ = IntervalVector(cd_);
  }

  std::shared_ptr<VectorField> with_param(const Interval& theta) const override {
    return std::make_shared<LinearField>(Ad_, bd_, cd_, u_, theta);
  }

  IntervalVector evaluate(const IntervalVector& s) const override {
    IntervalVector r = mat_vec(A_, s);
    for (int i = 0; i < n_; ++i) r[i] += b_[i] + theta_ * c_[i];
    return r;
  }
  IntervalMatrix state_jacobian(const IntervalVector&) const override { return A_; }
  IntervalVector param_derivative(const IntervalVector&) const override { return c_; }
  TSeriesVec eval_series(const TSeriesVec& u) const override {
    int len = u[0].len();
    TSeriesVec r(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      TSeries s = TSeries::constant(b_[i] + theta_ * c_[i], len);
      for (int k = 0; k < n_; ++k) s = s + A_.at(i, k) * u[static_cast<size_t>(k)];
      r[static_cast<size_t>(i)] = std::move(s);
    }
    return r;
  }
  TSeriesMat jac_series(const TSeriesVec& u) const override {
    int len = u[0].len();
    TSeriesMat r(static_cast<size_t>(n_), TSeriesVec(static_cast<size_t>(n_)));
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        r[static_cast<size_t>(i)][static_cast<size_t>(k)] =
            TSeries::constant(A_.at(i, k), len);
    return r;
  }
  TSeriesVec param_derivative_series(const TSeriesVec& u) const override {
    int len = u[0].len();
    TSeriesVec r(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) r[static_cast<size_t>(i)] = TSeries::constant(c_[i], len);
    return r;
  }
  VecD evaluate_d(const VecD& s) const override {
    VecD r(bd_);
    double th = theta_.mid();
    for (size_t i = 0; i < r.size(); ++i) {
      r[i] += th * cd_[i];
      for (size_t k = 0; k < s.size(); ++k) r[i] += Ad_[i][k] * s[k];
    }
    return r;
  }
  MatD jacobian_d(const VecD&) const override { return Ad_; }

 private:
  IntervalMatrix A_;
  IntervalVector b_, c_;
  MatD Ad_;
  VecD bd_, cd_;
};

}  // namespace homoclinic
