#include "homoclinic/vector_field.hpp"

#include "homoclinic/seed.hpp"

namespace homoclinic {

namespace {

class ReversedField final : public VectorField {
 public:
  explicit ReversedField(FieldPtr inner)
      : VectorField(inner->state_dim(), inner->stable_dim(), inner->param_range()),
        inner_(std::move(inner)) {}

  std::shared_ptr<VectorField> with_param(const Interval& theta) const override {
    return std::make_shared<ReversedField>(
        FieldPtr(inner_->with_param(theta)));
  }

  IntervalVector evaluate(const IntervalVector& s) const override {
    return -inner_->evaluate(s);
  }
  IntervalMatrix state_jacobian(const IntervalVector& s) const override {
    return -inner_->state_jacobian(s);
  }
  IntervalVector param_derivative(const IntervalVector& s) const override {
    return -inner_->param_derivative(s);
  }
  TSeriesVec eval_series(const TSeriesVec& u) const override {
    TSeriesVec r = inner_->eval_series(u);
    for (auto& s : r) s = -s;
    return r;
  }
  TSeriesMat jac_series(const TSeriesVec& u) const override {
    TSeriesMat r = inner_->jac_series(u);
    for (auto& row : r)
      for (auto& s : row) s = -s;
    return r;
  }
  TSeriesVec param_derivative_series(const TSeriesVec& u) const override {
    TSeriesVec r = inner_->param_derivative_series(u);
    for (auto& s : r) s = -s;
    return r;
  }
  VecD evaluate_d(const VecD& s) const override {
    VecD r = inner_->evaluate_d(s);
    for (auto& x : r) x = -x;
    return r;
  }
  MatD jacobian_d(const VecD& s) const override {
    MatD r = inner_->jacobian_d(s);
    for (auto& row : r)
      for (auto& x : row) x = -x;
    return r;
  }

 private:
  FieldPtr inner_;
};

class ExtendedField final : public VectorField {
 public:
  ExtendedField(FieldPtr inner, double scale)
      : VectorField(inner->state_dim() + 1, inner->unstable_dim() + 1, Interval()),
        inner_(std::move(inner)), scale_(scale), center_(inner_->param_range().mid()) {}

  double scale() const { return scale_; }
  double center() const { return center_; }
  /// theta~ range covering the inner parameter enclosure.
  Interval normalized_range() const {
    return (inner_->param_range() - Interval(center_)) / Interval(scale_);
  }

  std::shared_ptr<VectorField> with_param(const Interval&) const override {
    throw std::logic_error("ExtendedField: parameter is a state coordinate");
  }

  IntervalVector evaluate(const IntervalVector& s) const override {
    auto [state, g] = split(s);
    FieldPtr at = inner_->with_param(g);
    IntervalVector f = at->evaluate(state);
    IntervalVector r(n_);
    for (int i = 0; i < n_ - 1; ++i) r[i] = f[i];
    r[n_ - 1] = Interval();
    return r;
  }
  IntervalMatrix state_jacobian(const IntervalVector& s) const override {
    auto [state, g] = split(s);
    FieldPtr at = inner_->with_param(g);
    IntervalMatrix j = at->state_jacobian(state);
    IntervalVector dth = at->param_derivative(state);
    IntervalMatrix r(n_, n_);
    for (int i = 0; i < n_ - 1; ++i) {
      for (int k = 0; k < n_ - 1; ++k) r.at(i, k) = j.at(i, k);
      r.at(i, n_ - 1) = Interval(scale_) * dth[i];
    }
    return r;  // last row exactly zero
  }
  IntervalVector param_derivative(const IntervalVector&) const override {
    return IntervalVector(n_);  // no free parameter remains
  }
  TSeriesVec eval_series(const TSeriesVec& u) const override {
    // theta~' = 0, so the parameter series is constant: the inner field is
    // evaluated with the parameter box taken from its order-0 coefficient.
    auto [ustate, gser] = split_series(u);
    FieldPtr at = inner_->with_param(param_box_of(gser));
    TSeriesVec f = at->eval_series(ustate);
    f.push_back(TSeries::constant(Interval(), u[0].len()));
    return f;
  }
  TSeriesMat jac_series(const TSeriesVec& u) const override {
    auto [ustate, gser] = split_series(u);
    FieldPtr at = inner_->with_param(param_box_of(gser));
    TSeriesMat j = at->jac_series(ustate);
    TSeriesVec dth = at->param_derivative_series(ustate);
    TSeriesMat r(static_cast<size_t>(n_));
    int len = u[0].len();
    for (int i = 0; i < n_ - 1; ++i) {
      auto& row = r[static_cast<size_t>(i)];
      row = std::move(j[static_cast<size_t>(i)]);
      row.push_back(Interval(scale_) * dth[static_cast<size_t>(i)]);
    }
    r[static_cast<size_t>(n_ - 1)].assign(static_cast<size_t>(n_),
                                          TSeries::constant(Interval(), len));
    return r;
  }
  TSeriesVec param_derivative_series(const TSeriesVec& u) const override {
    return TSeriesVec(static_cast<size_t>(n_),
                      TSeries::constant(Interval(), u[0].len()));
  }
  VecD evaluate_d(const VecD& s) const override {
    VecD state(s.begin(), s.end() - 1);
    double g = center_ + scale_ * s.back();
    FieldPtr at = inner_->with_param(Interval(g));
    VecD f = at->evaluate_d(state);
    f.push_back(0.0);
    return f;
  }
  MatD jacobian_d(const VecD& s) const override {
    VecD state(s.begin(), s.end() - 1);
    double g = center_ + scale_ * s.back();
    FieldPtr at = inner_->with_param(Interval(g));
    MatD j = at->jacobian_d(state);
    IntervalVector box(static_cast<int>(state.size()));
    for (int i = 0; i < box.dim(); ++i) box[i] = Interval(state[static_cast<size_t>(i)]);
    IntervalVector dth = at->param_derivative(box);
    for (int i = 0; i < n_ - 1; ++i)
      j[static_cast<size_t>(i)].push_back(scale_ * dth[i].mid());
    j.emplace_back(static_cast<size_t>(n_), 0.0);
    return j;
  }

 private:
  std::pair<IntervalVector, Interval> split(const IntervalVector& s) const {
    IntervalVector state(n_ - 1);
    for (int i = 0; i < n_ - 1; ++i) state[i] = s[i];
    Interval g = Interval(center_) + Interval(scale_) * s[n_ - 1];
    return {state, g};
  }
  std::pair<TSeriesVec, TSeries> split_series(const TSeriesVec& u) const {
    TSeriesVec state(u.begin(), u.end() - 1);
    return {state, u.back()};
  }
  Interval param_box_of(const TSeries& gser) const {
    return Interval(center_) + Interval(scale_) * gser[0];
  }

  FieldPtr inner_;
  double scale_;
  double center_;
};

class ChartField final : public VectorField {
 public:
  ChartField(FieldPtr inner, LocalChart chart)
      : VectorField(inner->state_dim(), inner->unstable_dim(), inner->param_range()),
        inner_(std::move(inner)), chart_(std::move(chart)) {}

  std::shared_ptr<VectorField> with_param(const Interval& theta) const override {
    return std::make_shared<ChartField>(FieldPtr(inner_->with_param(theta)), chart_);
  }

  IntervalVector evaluate(const IntervalVector& z) const override {
    return mat_vec(chart_.C_inv_enclosure, inner_->evaluate(chart_.from_local(z)));
  }
  IntervalMatrix state_jacobian(const IntervalVector& z) const override {
    IntervalMatrix j = inner_->state_jacobian(chart_.from_local(z));
    return mat_mul(chart_.C_inv_enclosure, mat_mul(j, chart_.C_int));
  }
  IntervalVector param_derivative(const IntervalVector& z) const override {
    return mat_vec(chart_.C_inv_enclosure, inner_->param_derivative(chart_.from_local(z)));
  }
  TSeriesVec eval_series(const TSeriesVec& u) const override {
    return conj_vec(inner_->eval_series(world_series(u)));
  }
  TSeriesMat jac_series(const TSeriesVec& u) const override {
    TSeriesMat j = inner_->jac_series(world_series(u));
    // C^{-1} J C on series entries
    const int n = n_;
    int len = u[0].len();
    TSeriesMat jc(static_cast<size_t>(n), TSeriesVec(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        TSeries s = TSeries::constant(Interval(), len);
        for (int l = 0; l < n; ++l)
          s = s + chart_.C_int.at(l, k) * j[static_cast<size_t>(i)][static_cast<size_t>(l)];
        jc[static_cast<size_t>(i)][static_cast<size_t>(k)] = std::move(s);
      }
    TSeriesMat out(static_cast<size_t>(n), TSeriesVec(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        TSeries s = TSeries::constant(Interval(), len);
        for (int l = 0; l < n; ++l)
          s = s + chart_.C_inv_enclosure.at(i, l) * jc[static_cast<size_t>(l)][static_cast<size_t>(k)];
        out[static_cast<size_t>(i)][static_cast<size_t>(k)] = std::move(s);
      }
    return out;
  }
  TSeriesVec param_derivative_series(const TSeriesVec& u) const override {
    return conj_vec(inner_->param_derivative_series(world_series(u)));
  }
  VecD evaluate_d(const VecD& z) const override {
    VecD f = inner_->evaluate_d(chart_.from_local_d(z));
    return seed::solve(chart_.C, f);
  }
  MatD jacobian_d(const VecD& z) const override {
    MatD j = inner_->jacobian_d(chart_.from_local_d(z));
    const size_t n = j.size();
    MatD jc(n, VecD(n, 0.0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) jc[i][k] += j[i][l] * chart_.C[l][k];
    MatD out(n, VecD(n, 0.0));
    for (size_t k = 0; k < n; ++k) {
      VecD col(n);
      for (size_t i = 0; i < n; ++i) col[i] = jc[i][k];
      VecD sol = seed::solve(chart_.C, col);
      for (size_t i = 0; i < n; ++i) out[i][k] = sol[i];
    }
    return out;
  }

 private:
  TSeriesVec world_series(const TSeriesVec& u) const {
    const int n = n_;
    int len = u[0].len();
    TSeriesVec w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      TSeries s = TSeries::constant(Interval(q0_entry(i)), len);
      for (int k = 0; k < n; ++k) s = s + chart_.C_int.at(i, k) * u[static_cast<size_t>(k)];
      w[static_cast<size_t>(i)] = std::move(s);
    }
    return w;
  }
  TSeriesVec conj_vec(const TSeriesVec& f) const {
    const int n = n_;
    int len = f[0].len();
    TSeriesVec r(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      TSeries s = TSeries::constant(Interval(), len);
      for (int k = 0; k < n; ++k)
        s = s + chart_.C_inv_enclosure.at(i, k) * f[static_cast<size_t>(k)];
      r[static_cast<size_t>(i)] = std::move(s);
    }
    return r;
  }
  double q0_entry(int i) const { return chart_.q0[static_cast<size_t>(i)]; }

  FieldPtr inner_;
  LocalChart chart_;
};

}  // namespace

FieldPtr reverse_time(const FieldPtr& f) { return std::make_shared<ReversedField>(f); }

FieldPtr to_local_field(const FieldPtr& f, const LocalChart& chart) {
  return std::make_shared<ChartField>(f, chart);
}

FieldPtr extend_with_parameter(const FieldPtr& f, double scale) {
  return std::make_shared<ExtendedField>(f, scale);
}

LocalChart::LocalChart(VecD q0_, MatD C_) : q0(std::move(q0_)), C(std::move(C_)) {
  C_int = IntervalMatrix(C);
  C_inv_enclosure = mat_inverse(C_int);
}

IntervalVector LocalChart::to_local(const IntervalVector& world) const {
  IntervalVector shifted(dim());
  for (int i = 0; i < dim(); ++i) shifted[i] = world[i] - Interval(q0[static_cast<size_t>(i)]);
  return mat_vec(C_inv_enclosure, shifted);
}

IntervalVector LocalChart::from_local(const IntervalVector& local) const {
  IntervalVector r = mat_vec(C_int, local);
  for (int i = 0; i < dim(); ++i) r[i] += Interval(q0[static_cast<size_t>(i)]);
  return r;
}

VecD LocalChart::to_local_d(const VecD& world) const {
  VecD shifted(world.size());
  for (size_t i = 0; i < world.size(); ++i) shifted[i] = world[i] - q0[i];
  return seed::solve(C, shifted);
}

VecD LocalChart::from_local_d(const VecD& local) const {
  VecD r = q0;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < local.size(); ++j) r[i] += C[i][j] * local[j];
  return r;
}

}  // namespace homoclinic
