#include "homoclinic/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace homoclinic {

namespace {

constexpr double kTimeQuantum = 0x1p-30;

double quantize_step(double h) {
  double q = std::floor(h / kTimeQuantum) * kTimeQuantum;
  return std::max(q, kTimeQuantum);
}

IntervalMatrix to_interval(const MatD& a) { return IntervalMatrix(a); }

// Modified Gram-Schmidt with column pivoting on the leading block; trailing
// `frozen` columns/rows stay the identity. Falls back to the identity when a
// column degenerates.
MatD orthonormal_frame(const MatD& b, int frozen) {
  const int n = static_cast<int>(b.size());
  const int m = n - frozen;
  MatD q(static_cast<size_t>(n), VecD(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) q[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
  if (m <= 0) return q;

  // working copy of the leading block columns
  MatD w(static_cast<size_t>(m), VecD(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w[static_cast<size_t>(j)][static_cast<size_t>(i)] =
        b[static_cast<size_t>(i)][static_cast<size_t>(j)];  // w[col][row]
  std::vector<int> order(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    double na = 0, nc = 0;
    for (int i = 0; i < m; ++i) {
      na += w[static_cast<size_t>(a)][static_cast<size_t>(i)] * w[static_cast<size_t>(a)][static_cast<size_t>(i)];
      nc += w[static_cast<size_t>(c)][static_cast<size_t>(i)] * w[static_cast<size_t>(c)][static_cast<size_t>(i)];
    }
    return na > nc;
  });

  MatD cols;  // orthonormal columns, in pivot order
  for (int kk = 0; kk < m; ++kk) {
    VecD v = w[static_cast<size_t>(order[static_cast<size_t>(kk)])];
    for (const VecD& c : cols) {
      double d = 0;
      for (int i = 0; i < m; ++i) d += c[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
      for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] -= d * c[static_cast<size_t>(i)];
    }
    double nv = 0;
    for (int i = 0; i < m; ++i) nv += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    nv = std::sqrt(nv);
    if (!(nv > 1e-150)) {
      // degenerate direction: complete with a coordinate axis
      for (int axis = 0; axis < m; ++axis) {
        VecD e(static_cast<size_t>(m), 0.0);
        e[static_cast<size_t>(axis)] = 1.0;
        for (const VecD& c : cols) {
          double d = c[static_cast<size_t>(axis)];
          for (int i = 0; i < m; ++i) e[static_cast<size_t>(i)] -= d * c[static_cast<size_t>(i)];
        }
        double ne = 0;
        for (int i = 0; i < m; ++i) ne += e[static_cast<size_t>(i)] * e[static_cast<size_t>(i)];
        ne = std::sqrt(ne);
        if (ne > 0.5) {
          for (int i = 0; i < m; ++i) e[static_cast<size_t>(i)] /= ne;
          v = e;
          nv = 1.0;
          break;
        }
      }
      if (!(nv > 0.5)) return q;  // give up: identity frame
    } else {
      for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] /= nv;
    }
    cols.push_back(v);
  }
  // place columns back in pivot order
  for (int kk = 0; kk < m; ++kk)
    for (int i = 0; i < m; ++i)
      q[static_cast<size_t>(i)][static_cast<size_t>(kk)] = cols[static_cast<size_t>(kk)][static_cast<size_t>(i)];
  return q;
}

IntervalVector mat_vec_point(const MatD& a, const IntervalVector& x) {
  return mat_vec(to_interval(a), x);
}

// State Taylor coefficients 0..order for trajectories starting in `base`.
TSeriesVec state_series(const VectorField& f, const IntervalVector& base, int order) {
  const int n = base.dim();
  TSeriesVec u(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = TSeries(base[i]);
  for (int k = 0; k < order; ++k) {
    TSeriesVec fu = f.eval_series(u);
    Interval inv(1.0);
    inv = inv / Interval(static_cast<double>(k + 1));
    for (int i = 0; i < n; ++i)
      u[static_cast<size_t>(i)].c.push_back(inv * fu[static_cast<size_t>(i)][k]);
  }
  return u;
}

// Coefficient matrices J_0..J_{len-1} of the Jacobian along a state jet.
std::vector<IntervalMatrix> jacobian_coefficients(const VectorField& f,
                                                  const TSeriesVec& u) {
  TSeriesMat js = f.jac_series(u);
  const int n = static_cast<int>(js.size());
  const int len = js[0][0].len();
  std::vector<IntervalMatrix> out(static_cast<size_t>(len), IntervalMatrix(n, n));
  for (int k = 0; k < len; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[static_cast<size_t>(k)].at(i, j) = js[static_cast<size_t>(i)][static_cast<size_t>(j)][k];
  return out;
}

// Variational Taylor coefficients V_0..V_{kmax} for V' = J(u(t)) V, V_0 given.
std::vector<IntervalMatrix> variational_series(const std::vector<IntervalMatrix>& jc,
                                               const IntervalMatrix& v0, int kmax) {
  std::vector<IntervalMatrix> v;
  v.reserve(static_cast<size_t>(kmax + 1));
  v.push_back(v0);
  const int n = v0.rows();
  for (int k = 0; k < kmax; ++k) {
    IntervalMatrix acc(n, n);
    for (int j = 0; j <= k && j < static_cast<int>(jc.size()); ++j)
      acc = acc + mat_mul(jc[static_cast<size_t>(j)], v[static_cast<size_t>(k - j)]);
    Interval inv = Interval(1.0) / Interval(static_cast<double>(k + 1));
    v.push_back(inv * acc);
  }
  return v;
}

Interval pow_interval(double h, int k) {
  Interval p(1.0), hh(h);
  for (int i = 0; i < k; ++i) p *= hh;
  return p;
}

// Sum_j v[j] h^j by Horner over matrices.
IntervalMatrix horner_mat(const std::vector<IntervalMatrix>& v, double h, int through) {
  const int n = v[0].rows();
  IntervalMatrix acc(n, n);
  Interval hh(h);
  for (int j = through; j >= 0; --j) acc = hh * acc + v[static_cast<size_t>(j)];
  return acc;
}

IntervalVector horner_vec(const TSeriesVec& u, double h, int through) {
  const int n = static_cast<int>(u.size());
  IntervalVector acc(n);
  for (int i = 0; i < n; ++i) {
    Interval s;
    for (int j = through; j >= 0; --j) s = s * Interval(h) + u[static_cast<size_t>(i)][j];
    acc[i] = s;
  }
  return acc;
}

IntervalMatrix variational_apriori(const VectorField& f, const IntervalVector& z,
                                   double h) {
  const int n = z.dim();
  IntervalMatrix jz = f.state_jacobian(z);
  IntervalMatrix vap = IntervalMatrix::identity(n);
  Interval span(0.0, h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vap.at(i, j) = vap.at(i, j).widened(1e-12);
  for (int it = 0; it < 30; ++it) {
    IntervalMatrix cand = IntervalMatrix::identity(n) + span * mat_mul(jz, vap);
    if (vap.contains(cand)) return vap;
    // inflate towards the candidate
    IntervalMatrix next(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        next.at(i, j) = Interval::hull(vap.at(i, j), cand.at(i, j)).widened(
            1e-12 + 0.1 * cand.at(i, j).width());
    vap = next;
  }
  throw IntegrationError("no a-priori enclosure for the variational equation");
}

}  // namespace

IntervalVector a_priori_enclosure(const VectorField& f, const IntervalVector& box,
                                  double h) {
  if (!(h > 0)) throw std::invalid_argument("a_priori_enclosure: h > 0 required");
  Interval span(0.0, h);
  IntervalVector fx = f.evaluate(box);
  IntervalVector z(box.dim());
  for (int i = 0; i < box.dim(); ++i)
    z[i] = (box[i] + span * fx[i]).widened(1e-14 + 0.1 * (span * fx[i]).width());
  for (int it = 0; it < 20; ++it) {
    IntervalVector fz = f.evaluate(z);
    IntervalVector cand(box.dim());
    for (int i = 0; i < box.dim(); ++i) cand[i] = box[i] + span * fz[i];
    if (z.contains(cand)) return z;
    for (int i = 0; i < box.dim(); ++i)
      z[i] = Interval::hull(z[i], cand[i]).widened(1e-14 + 0.15 * cand[i].width());
  }
  throw IntegrationError("no a-priori enclosure found for step size " + std::to_string(h));
}

LohnerState LohnerState::from_box(const IntervalVector& box) {
  LohnerState st;
  const int n = box.dim();
  st.m = box.mid();
  st.r0 = IntervalVector(n);
  for (int i = 0; i < n; ++i) st.r0[i] = box[i] - Interval(st.m[static_cast<size_t>(i)]);
  st.Cq.assign(static_cast<size_t>(n), VecD(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) st.Cq[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
  st.Cw = IntervalMatrix::identity(n);
  st.Q = st.Cq;
  st.r = IntervalVector(n);
  st.Vq = st.Cq;
  st.Vw = IntervalMatrix::identity(n);
  return st;
}

IntervalVector LohnerState::hull() const {
  IntervalVector c = mat_vec_point(Cq, mat_vec(Cw, r0));
  IntervalVector qr = mat_vec_point(Q, r);
  IntervalVector x(qr.dim());
  for (int i = 0; i < qr.dim(); ++i)
    x[i] = Interval(m[static_cast<size_t>(i)]) + c[i] + qr[i];
  return x;
}

IntervalMatrix LohnerState::variational() const {
  return mat_mul(to_interval(Vq), Vw);
}

bool lohner_step(const VectorField& f, LohnerState& st, double h,
                 const IntegratorConfig& cfg, TubeSegment* tube_out,
                 bool enforce_tol) {
  const int n = f.state_dim();
  const int ord = cfg.order;
  IntervalVector x = st.hull();

  IntervalVector z;
  try {
    z = a_priori_enclosure(f, x, h);
  } catch (const IntegrationError&) {
    return false;
  }

  // Taylor jets: value at the midpoint, derivative over the box, remainders
  // over the rough enclosure.
  IntervalVector mbox(n);
  for (int i = 0; i < n; ++i) mbox[i] = Interval(st.m[static_cast<size_t>(i)]);
  TSeriesVec um = state_series(f, mbox, ord);
  TSeriesVec uz = state_series(f, z, ord + 1);

  Interval hk1 = pow_interval(h, ord + 1);
  IntervalVector value(n);
  double rem_width = 0.0;
  for (int i = 0; i < n; ++i) {
    Interval rem = uz[static_cast<size_t>(i)][ord + 1] * hk1;
    rem_width = std::max(rem_width, rem.width());
  }
  if (enforce_tol && rem_width > cfg.tol && h > cfg.h_min) return false;
  {
    IntervalVector poly = horner_vec(um, h, ord);
    for (int i = 0; i < n; ++i)
      value[i] = poly[i] + uz[static_cast<size_t>(i)][ord + 1] * hk1;
  }

  // One-step flow derivative over the box.
  TSeriesVec ux = state_series(f, x, ord);
  std::vector<IntervalMatrix> jx = jacobian_coefficients(f, ux);
  std::vector<IntervalMatrix> vx =
      variational_series(jx, IntervalMatrix::identity(n), ord);
  IntervalMatrix s_step = horner_mat(vx, h, ord);
  {
    IntervalMatrix vap = variational_apriori(f, z, h);
    std::vector<IntervalMatrix> jz = jacobian_coefficients(f, uz);
    std::vector<IntervalMatrix> vz = variational_series(jz, vap, ord + 1);
    s_step = s_step + hk1 * vz[static_cast<size_t>(ord + 1)];
  }

  // Frame refresh: Q' = orth(mid(S * Qold)), with a rigorous inverse; the
  // identity frame is the fallback (and the "none" wrapping mode).
  auto refresh = [&](const IntervalMatrix& bmat, MatD& q_out, IntervalMatrix& qinv_out) {
    if (cfg.qr_wrapping) q_out = orthonormal_frame(bmat.mid(), cfg.frozen_tail);
    else {
      q_out.assign(static_cast<size_t>(n), VecD(static_cast<size_t>(n), 0.0));
      for (int i = 0; i < n; ++i) q_out[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    }
    try {
      qinv_out = mat_inverse(to_interval(q_out));
    } catch (const SingularMatrixError&) {
      q_out.assign(static_cast<size_t>(n), VecD(static_cast<size_t>(n), 0.0));
      for (int i = 0; i < n; ++i) q_out[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
      qinv_out = IntervalMatrix::identity(n);
    }
  };

  VecD m_new(static_cast<size_t>(n));
  IntervalVector delta(n);
  for (int i = 0; i < n; ++i) {
    m_new[static_cast<size_t>(i)] = value[i].mid();
    delta[i] = value[i] - Interval(m_new[static_cast<size_t>(i)]);
  }

  // Initial-box correlation term: Cq' (Cw' r0) contains S Cq (Cw r0).
  IntervalMatrix bc = mat_mul(s_step, to_interval(st.Cq));
  MatD cq_new;
  IntervalMatrix cq_inv;
  refresh(bc, cq_new, cq_inv);
  IntervalMatrix cw_new = mat_mul(mat_mul(cq_inv, bc), st.Cw);

  // Local-error term: Q' r' contains S (Q r) + (value - m').
  IntervalMatrix bq = mat_mul(s_step, to_interval(st.Q));
  MatD q_new;
  IntervalMatrix q_inv;
  refresh(bq, q_new, q_inv);
  IntervalVector r_new = mat_vec(mat_mul(q_inv, bq), st.r) + mat_vec(q_inv, delta);
  {
    // Both association orders enclose the set; intersect coordinatewise.
    IntervalVector alt = mat_vec(q_inv, mat_vec(bq, st.r) + delta);
    for (int i = 0; i < n; ++i) r_new[i] = r_new[i].intersect(alt[i]).value_or(r_new[i]);
  }

  // Accumulated flow derivative.
  IntervalMatrix bv = mat_mul(s_step, to_interval(st.Vq));
  MatD vq_new;
  IntervalMatrix vq_inv;
  refresh(bv, vq_new, vq_inv);
  IntervalMatrix vw_new = mat_mul(mat_mul(vq_inv, bv), st.Vw);

  if (tube_out) {
    tube_out->t_lo = st.t;
    tube_out->t_hi = st.t + h;
    tube_out->box = z;
  }
  st.m = std::move(m_new);
  st.Cq = std::move(cq_new);
  st.Cw = cw_new;
  st.Q = std::move(q_new);
  st.r = r_new;
  st.Vq = std::move(vq_new);
  st.Vw = vw_new;
  st.t += h;
  return true;
}

FlowEnclosure flow(const VectorField& f, const IntervalVector& box, double T,
                   const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(T > 0)) throw std::invalid_argument("flow: T > 0 required (reverse the field)");
  if (box.dim() != f.state_dim()) throw std::invalid_argument("flow: dimension mismatch");
  if (!box.is_finite()) throw std::invalid_argument("flow: box must be finite");

  FlowEnclosure out;
  out.time = T;
  LohnerState st = LohnerState::from_box(box);
  double h_try = quantize_step(std::min(cfg.h_init, T));
  double remaining = T;
  while (remaining > 0) {
    double h = std::min(h_try, quantize_step(remaining));
    if (remaining <= h_try) h = remaining;  // exact final step
    bool ok = false;
    while (true) {
      TubeSegment seg;
      ok = lohner_step(f, st, h, cfg, &seg, h > cfg.h_min);
      if (ok) {
        out.tube.push_back(std::move(seg));
        break;
      }
      double h2 = quantize_step(h / 2);
      if (h2 >= h || h2 < std::max(cfg.h_min * 0.5, kTimeQuantum))
        throw IntegrationError("step failed at t=" + std::to_string(st.t) +
                               " with h=" + std::to_string(h));
      h = h2;
    }
    out.steps_taken += 1;
    out.max_step_width = std::max(out.max_step_width, h);
    remaining = T - st.t;
    if (out.steps_taken > cfg.max_steps)
      throw IntegrationError("max_steps exceeded");
    IntervalVector hull = st.hull();
    if (hull.max_width() > cfg.blowup_threshold)
      throw IntegrationError("enclosure width exceeded blow-up threshold at t=" +
                             std::to_string(st.t));
    h_try = quantize_step(std::min(cfg.h_init, h * 1.2));
  }
  out.image = st.hull();
  out.variational = st.variational();
  return out;
}

bool monitor_stays_in(const FlowEnclosure& run, const IntervalVector& region) {
  return run.image.subset_of(region);
}

}  // namespace homoclinic
