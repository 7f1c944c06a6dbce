#include "homoclinic/shooting.hpp"

#include <cmath>
#include <future>

namespace homoclinic {

namespace {

// Landing region and graph-domain admission: the block of the stable stage.
void require_in_block(const IntervalVector& p, const SplitBlock& blk, const char* what) {
  bool ok = true;
  for (int i = 0; i < blk.u; ++i) ok = ok && p[i].mag() <= blk.x_radius;
  IntervalVector y = p.slice(blk.u, blk.s);
  ok = ok && euclid_norm_bound(y).hi() <= blk.y_radius;
  if (!ok)
    throw std::domain_error(std::string(what) +
                            ": flow image not verified inside the block D");
}

}  // namespace

bool ShootingResult::recheck() const {
  bool left_pos = h_left.lo() > 0.0, left_neg = h_left.hi() < 0.0;
  bool right_pos = h_right.lo() > 0.0, right_neg = h_right.hi() < 0.0;
  bool opposite = (left_neg && right_pos) || (left_pos && right_neg);
  bool exist_expected = opposite && stays_in_D;
  if (existence != exist_expected) return false;
  std::string orient_expected = "none";
  if (exist_expected) orient_expected = left_neg ? "standard" : "reversed";
  if (orientation != orient_expected) return false;
  bool uniq_expected = false;
  if (exist_expected) {
    if (orientation == "standard") uniq_expected = h_prime.lo() > 0.0;
    else uniq_expected = h_prime.hi() < 0.0;
  }
  return uniqueness == uniq_expected;
}

HRun splitting_h(const ShootingSetup& s, const Interval& theta) {
  HRun out;
  IntervalVector p0 = exit_point(s.unstable, theta);
  FieldPtr at = s.local_field->with_param(theta);
  out.run = flow(*at, p0, s.T, s.integrator);
  out.landing = out.run.image;
  require_in_block(out.landing, s.stable.block, "splitting_h");
  IntervalVector y = out.landing.slice(s.stable.block.u, s.stable.block.s);
  IntervalVector ws = eval_graph(s.stable, y, theta);
  out.h = out.landing[0] - ws[0];
  return out;
}

HPrimeRun splitting_h_derivative(const ShootingSetup& s) {
  HPrimeRun out;
  const int n = s.local_field->state_dim();
  const double s_run = s.unstable.theta_scale;
  FieldPtr ext = extend_with_parameter(s.local_field, s_run);

  const Interval theta = s.local_field->param_range();
  Interval theta_norm = (theta - Interval(theta.mid())) / Interval(s_run);

  IntervalVector p0 = exit_point(s.unstable, theta);
  IntervalVector box(n + 1);
  for (int i = 0; i < n; ++i) box[i] = p0[i];
  box[n] = theta_norm;

  IntegratorConfig cfg = s.integrator;
  cfg.frozen_tail = 1;
  out.run = flow(*ext, box, s.T, cfg);
  out.landing = out.run.image.slice(0, n);
  require_in_block(out.landing, s.stable.block, "splitting_h_derivative");

  // dPhi/dtheta~ = (dPhi/dp), (0, dw^u/dtheta~) + dPhi/dtheta~ column.
  const IntervalMatrix& v = out.run.variational;
  IntervalVector dpu(n);
  dpu[0] = Interval();  // the exit x-coordinate is exactly R for every theta
  for (int i = s.unstable.block.u; i < n; ++i)
    dpu[i] = Interval::ball(s.unstable.slope_bound);
  IntervalVector total(n);
  for (int i = 0; i < n; ++i) {
    Interval acc = v.at(i, n);
    for (int k = 0; k < n; ++k) acc += v.at(i, k) * dpu[k];
    total[i] = acc;
  }

  // h'(theta~) = pi_x total - dw^s/dy . pi_y total - dw^s/dtheta~.
  Interval y_norm = euclid_norm_bound(total.slice(s.stable.block.u, s.stable.block.s));
  Interval ls_term = Interval::ball(s.stable.L) * Interval(0.0, y_norm.hi());
  double ws_slope_run = s.stable.slope_bound * (s_run / s.stable.theta_scale);
  Interval ws_theta_term = Interval::ball(ws_slope_run);
  out.h_prime_norm = total[0] - ls_term - ws_theta_term;
  out.h_prime_raw = out.h_prime_norm / Interval(s_run);
  out.stays_in_D = true;  // require_in_block above would have thrown
  return out;
}

ShootingOutputs run_shooting(const ShootingSetup& s) {
  ShootingOutputs out;
  const Interval theta = s.local_field->param_range();
  Interval theta_l(theta.lo()), theta_r(theta.hi());

  if (s.threads > 1) {
    auto fl = std::async(std::launch::async, [&] { return splitting_h(s, theta_l); });
    auto fr = std::async(std::launch::async, [&] { return splitting_h(s, theta_r); });
    out.family = splitting_h_derivative(s);
    out.left = fl.get();
    out.right = fr.get();
  } else {
    out.left = splitting_h(s, theta_l);
    out.right = splitting_h(s, theta_r);
    out.family = splitting_h_derivative(s);
  }

  ShootingResult& r = out.result;
  r.theta_l = theta_l;
  r.theta_r = theta_r;
  r.h_left = out.left.h;
  r.h_right = out.right.h;
  r.h_prime = out.family.h_prime_raw;
  r.stays_in_D = out.family.stays_in_D;

  bool left_neg = r.h_left.hi() < 0.0, left_pos = r.h_left.lo() > 0.0;
  bool right_neg = r.h_right.hi() < 0.0, right_pos = r.h_right.lo() > 0.0;
  r.existence = ((left_neg && right_pos) || (left_pos && right_neg)) && r.stays_in_D;
  if (r.existence) r.orientation = left_neg ? "standard" : "reversed";
  if (r.existence) {
    if (r.orientation == "standard")
      r.uniqueness = r.h_prime.lo() > 0.0;
    else
      r.uniqueness = r.h_prime.hi() < 0.0;
  }
  // Mean value cross-check: h(r) - h(l) must lie in h' * (theta_r - theta_l).
  {
    Interval lhs = r.h_right - r.h_left;
    Interval rhs = r.h_prime * (theta_r - theta_l);
    r.mean_value_ok = rhs.contains(lhs);
  }
  return out;
}

}  // namespace homoclinic
