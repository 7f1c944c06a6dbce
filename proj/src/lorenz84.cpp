#include "homoclinic/lorenz84.hpp"

namespace homoclinic {

namespace {

// Shared polynomial core; T is double, Interval, or TSeries with interval
// coefficients (scalars enter as the matching constant type).
template <typename T, typename P>
std::array<T, 3> rhs(const T& X, const T& Y, const T& Z, const P& a, const P& b,
                     const P& F, const P& G) {
  T f0 = -(Y * Y) - Z * Z - a * X + a * F;
  T f1 = X * Y - b * (X * Z) - Y + G;
  T f2 = b * (X * Y) + X * Z - Z;
  return {std::move(f0), std::move(f1), std::move(f2)};
}

}  // namespace

IntervalVector Lorenz84Field::evaluate(const IntervalVector& s) const {
  auto f = rhs<Interval, Interval>(s[0], s[1], s[2], a_, b_, F_, theta_);
  return IntervalVector{f[0], f[1], f[2]};
}

IntervalMatrix Lorenz84Field::state_jacobian(const IntervalVector& s) const {
  const Interval &X = s[0], &Y = s[1], &Z = s[2];
  Interval one(1.0), two(2.0);
  IntervalMatrix j(3, 3);
  j.at(0, 0) = -a_;        j.at(0, 1) = -(two * Y);   j.at(0, 2) = -(two * Z);
  j.at(1, 0) = Y - b_ * Z; j.at(1, 1) = X - one;      j.at(1, 2) = -(b_ * X);
  j.at(2, 0) = b_ * Y + Z; j.at(2, 1) = b_ * X;       j.at(2, 2) = X - one;
  return j;
}

IntervalVector Lorenz84Field::param_derivative(const IntervalVector&) const {
  return IntervalVector{Interval(), Interval(1.0), Interval()};
}

TSeriesVec Lorenz84Field::eval_series(const TSeriesVec& u) const {
  auto f = rhs<TSeries, Interval>(u[0], u[1], u[2], a_, b_, F_, theta_);
  return {std::move(f[0]), std::move(f[1]), std::move(f[2])};
}

TSeriesMat Lorenz84Field::jac_series(const TSeriesVec& u) const {
  const TSeries &X = u[0], &Y = u[1], &Z = u[2];
  int len = X.len();
  Interval one(1.0), two(2.0);
  TSeriesMat j(3, TSeriesVec(3));
  j[0][0] = TSeries::constant(-a_, len);
  j[0][1] = Interval(-1.0) * (two * Y);
  j[0][2] = Interval(-1.0) * (two * Z);
  j[1][0] = Y - b_ * Z;
  j[1][1] = X - one;
  j[1][2] = Interval(-1.0) * (b_ * X);
  j[2][0] = b_ * Y + Z;
  j[2][1] = b_ * X;
  j[2][2] = X - one;
  return j;
}

TSeriesVec Lorenz84Field::param_derivative_series(const TSeriesVec& u) const {
  int len = u[0].len();
  TSeriesVec r(3, TSeries::constant(Interval(), len));
  r[1] = TSeries::constant(Interval(1.0), len);
  return r;
}

VecD Lorenz84Field::evaluate_d(const VecD& s) const {
  auto f = rhs<double, double>(s[0], s[1], s[2], a_.mid(), b_.mid(), F_.mid(),
                               theta_.mid());
  return {f[0], f[1], f[2]};
}

MatD Lorenz84Field::jacobian_d(const VecD& s) const {
  double a = a_.mid(), b = b_.mid();
  double X = s[0], Y = s[1], Z = s[2];
  return {{-a, -2 * Y, -2 * Z}, {Y - b * Z, X - 1, -b * X}, {b * Y + Z, b * X, X - 1}};
}

}  // namespace homoclinic
