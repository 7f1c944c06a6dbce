#include "homoclinic/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "homoclinic/lognorm.hpp"

namespace homoclinic {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::failed: return "failed";
    default: return "undetermined";
  }
}

IntervalVector SplitBlock::bounding_box() const {
  IntervalVector b(dim());
  for (int i = 0; i < u; ++i) b[i] = Interval::ball(x_radius);
  for (int i = u; i < dim(); ++i) b[i] = Interval::ball(y_radius);
  return b;
}

namespace {

std::vector<int> expanding_indices(const SplitBlock& blk, ManifoldSide side) {
  std::vector<int> idx;
  if (side == ManifoldSide::unstable)
    for (int i = 0; i < blk.u; ++i) idx.push_back(i);
  else
    for (int i = blk.u; i < blk.dim(); ++i) idx.push_back(i);
  return idx;
}

std::vector<int> contracting_indices(const SplitBlock& blk, ManifoldSide side) {
  return expanding_indices(blk, side == ManifoldSide::unstable ? ManifoldSide::stable
                                                               : ManifoldSide::unstable);
}

IntervalMatrix pick_block(const IntervalMatrix& j, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  IntervalMatrix r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < cols.size(); ++k)
      r.at(static_cast<int>(i), static_cast<int>(k)) = j.at(rows[i], cols[k]);
  return r;
}

IntervalVector pick(const IntervalVector& v, const std::vector<int>& idx) {
  IntervalVector r(static_cast<int>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) r[static_cast<int>(i)] = v[idx[i]];
  return r;
}

// Relation of a y-sub-box to the ball of radius rho.
enum class BallPos { inside, outside, straddling };
BallPos ball_position(const IntervalVector& ybox, double rho) {
  Interval nrm = euclid_norm_bound(ybox);
  if (nrm.lo() > rho) return BallPos::outside;
  if (nrm.hi() < rho) return BallPos::inside;
  return BallPos::straddling;
}

struct FaceTask {
  IntervalVector box;  // full-dimension box, one coordinate possibly pinned
  int depth;
};

int widest_coord(const IntervalVector& b, const std::vector<int>& candidates) {
  int best = candidates.front();
  double w = -1;
  for (int i : candidates)
    if (b[i].width() > w) { w = b[i].width(); best = i; }
  return best;
}

}  // namespace

IsolatingWitness check_isolating_block(const VectorField& f, const SplitBlock& blk,
                                       ManifoldSide side, int max_depth,
                                       long max_boxes) {
  IsolatingWitness wit;
  const int n = blk.dim();
  if (f.state_dim() != n) throw std::invalid_argument("check_isolating_block: dims");
  std::vector<int> xs, ys;
  for (int i = 0; i < blk.u; ++i) xs.push_back(i);
  for (int i = blk.u; i < n; ++i) ys.push_back(i);
  const bool x_expanding = (side == ManifoldSide::unstable);

  // Faces of the x box factor (x_i = +-x_radius), and the y sphere
  // (||y|| = y_radius, covered by boxes straddling the sphere).
  // Expanding-factor faces need (pi_exp f | pi_exp q) > 0, contracting
  // faces (pi_con f | pi_con q) < 0.
  IntervalVector base = blk.bounding_box();
  std::deque<std::pair<FaceTask, bool>> todo;  // (task, is_sphere_face)
  for (int i : xs)
    for (double sgn : {-1.0, 1.0}) {
      FaceTask t{base, 0};
      t.box[i] = Interval(sgn * blk.x_radius);
      todo.emplace_back(std::move(t), false);
    }
  todo.emplace_back(FaceTask{base, 0}, true);
  long processed = 0;

  while (!todo.empty()) {
    auto [task, is_sphere] = std::move(todo.front());
    todo.pop_front();
    if (++processed > max_boxes) {
      wit.verdict = Verdict::undetermined;
      wit.detail = "subdivision budget exhausted";
      wit.boxes_checked = processed;
      return wit;
    }
    IntervalVector ypart = pick(task.box, ys);
    BallPos pos = ball_position(ypart, blk.y_radius);
    if (pos == BallPos::outside) continue;
    if (is_sphere && pos == BallPos::inside) continue;  // box misses the sphere

    bool exit_face;  // condition sign on this face
    std::vector<int>* factor;
    if (is_sphere) {
      exit_face = !x_expanding;
      factor = &ys;
    } else {
      exit_face = x_expanding;
      factor = &xs;
    }
    IntervalVector fv = f.evaluate(task.box);
    Interval prod = dot(pick(fv, *factor), pick(task.box, *factor));
    bool ok = exit_face ? prod.lo() > 0.0 : prod.hi() < 0.0;
    bool bad = exit_face ? prod.hi() <= 0.0 : prod.lo() >= 0.0;
    if (ok) continue;
    if (bad && pos != BallPos::straddling) {
      // definite violation strictly inside the face region
      wit.verdict = Verdict::failed;
      wit.detail = "face condition violated";
      wit.boxes_checked = processed;
      return wit;
    }
    if (task.depth >= max_depth) {
      wit.verdict = Verdict::undetermined;
      wit.detail = "sign undetermined at max subdivision depth";
      wit.boxes_checked = processed;
      return wit;
    }
    // split along the widest free coordinate
    std::vector<int> free_coords;
    for (int i = 0; i < n; ++i)
      if (task.box[i].width() > 0.0) free_coords.push_back(i);
    if (free_coords.empty()) {
      wit.verdict = Verdict::undetermined;
      wit.detail = "degenerate face box with undetermined sign";
      wit.boxes_checked = processed;
      return wit;
    }
    int split = widest_coord(task.box, free_coords);
    double mid = task.box[split].mid();
    FaceTask a{task.box, task.depth + 1}, b{task.box, task.depth + 1};
    a.box[split] = Interval(task.box[split].lo(), mid);
    b.box[split] = Interval(mid, task.box[split].hi());
    wit.max_depth_used = std::max(wit.max_depth_used, task.depth + 1);
    todo.emplace_back(std::move(a), is_sphere);
    todo.emplace_back(std::move(b), is_sphere);
  }
  wit.verdict = Verdict::verified;
  wit.boxes_checked = processed;
  return wit;
}

namespace {

// Iterate the 2^k-per-axis cells of the block, skipping cells outside the
// y ball, and fold a visitor over them.
template <typename Fn>
void for_each_cell(const SplitBlock& blk, int k, Fn&& visit) {
  const int n = blk.dim();
  const int parts = 1 << k;
  std::vector<int> counter(static_cast<size_t>(n), 0);
  IntervalVector base = blk.bounding_box();
  while (true) {
    IntervalVector cell(n);
    for (int i = 0; i < n; ++i) {
      double lo = base[i].lo(), hi = base[i].hi();
      double w = (hi - lo) / parts;
      int c = counter[static_cast<size_t>(i)];
      double a = lo + w * c;
      double b = (c == parts - 1) ? hi : lo + w * (c + 1);
      cell[i] = Interval(a, b);
    }
    IntervalVector ypart = cell.slice(blk.u, blk.s);
    if (ball_position(ypart, blk.y_radius) != BallPos::outside) visit(cell);
    int i = 0;
    for (; i < n; ++i) {
      if (++counter[static_cast<size_t>(i)] < parts) break;
      counter[static_cast<size_t>(i)] = 0;
    }
    if (i == n) break;
  }
}

struct SupAccum {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(const Interval& cell) {
    lo = std::max(lo, cell.lo());
    hi = std::max(hi, cell.hi());
  }
  Interval interval() const { return Interval(lo, hi); }
};

struct InfAccum {
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  void add(const Interval& cell) {
    lo = std::min(lo, cell.lo());
    hi = std::min(hi, cell.hi());
  }
  Interval interval() const { return Interval(lo, hi); }
};

}  // namespace

RateCertificate check_rate_conditions(const VectorField& f, const SplitBlock& blk,
                                      ManifoldSide side, double L, int subdivision_k) {
  if (!(L > 0)) throw std::invalid_argument("check_rate_conditions: L > 0 required");
  RateCertificate cert;
  cert.L = L;
  const std::vector<int> exp = expanding_indices(blk, side);
  const std::vector<int> con = contracting_indices(blk, side);
  Interval invL = Interval(1.0) / Interval(L);

  SupAccum mu1, mu2, nrm_exp_con;  // sup ||d f_exp / d con|| for xi
  InfAccum ml_exp;
  for_each_cell(blk, subdivision_k, [&](const IntervalVector& cell) {
    IntervalMatrix j = f.state_jacobian(cell);
    IntervalMatrix j_cc = pick_block(j, con, con);
    IntervalMatrix j_ce = pick_block(j, con, exp);
    IntervalMatrix j_ec = pick_block(j, exp, con);
    IntervalMatrix j_ee = pick_block(j, exp, exp);
    Interval l_cc = log_norm(j_cc);
    mu1.add(l_cc + invL * op_norm_bound(j_ce));
    mu2.add(l_cc + invL * op_norm_bound(j_ec));
    ml_exp.add(log_min(j_ee));
    nrm_exp_con.add(op_norm_bound(j_ec));
  });
  cert.mu1 = mu1.interval();
  cert.mu2 = mu2.interval();
  cert.xi = ml_exp.interval() - invL * nrm_exp_con.interval();
  cert.rate_ok = cert.mu1.hi() < 0.0 && cert.xi.lo() > 0.0 && cert.mu2.hi() < cert.xi.lo();
  cert.verdict = cert.rate_ok ? Verdict::verified : Verdict::undetermined;
  double dom_radius = (side == ManifoldSide::unstable) ? blk.x_radius : blk.y_radius;
  cert.contraction_C =
      Interval(2.0) * Interval(dom_radius) * (Interval(1.0) + invL);
  return cert;
}

ConeCertificate check_cone_conditions(const VectorField& f_extended,
                                      const SplitBlock& blk, ManifoldSide side,
                                      double M, double theta_scale,
                                      const Interval& theta_norm, int subdivision_k) {
  if (!(M > 0)) throw std::invalid_argument("check_cone_conditions: M > 0 required");
  const int n = blk.dim();
  if (f_extended.state_dim() != n + 1)
    throw std::invalid_argument("check_cone_conditions: field must be parameter-extended");
  ConeCertificate cert;
  cert.M = M;
  cert.theta_scale = theta_scale;
  cert.slope_bound = 1.0 / M;

  std::vector<int> exp_t = expanding_indices(blk, side);
  exp_t.push_back(n);  // the normalized parameter coordinate
  const std::vector<int> con = contracting_indices(blk, side);
  Interval mi(M);
  Interval invM = Interval(1.0) / mi;

  SupAccum mu_acc;
  SupAccum ml_neg;  // accumulate -m_l to take the inf via a sup
  SupAccum nrm_et_c;
  for_each_cell(blk, subdivision_k, [&](const IntervalVector& cell) {
    IntervalVector ext(n + 1);
    for (int i = 0; i < n; ++i) ext[i] = cell[i];
    ext[n] = theta_norm;
    IntervalMatrix j = f_extended.state_jacobian(ext);
    IntervalMatrix j_cc = pick_block(j, con, con);
    IntervalMatrix j_c_et = pick_block(j, con, exp_t);
    IntervalMatrix j_et_et = pick_block(j, exp_t, exp_t);
    IntervalMatrix j_et_c = pick_block(j, exp_t, con);
    mu_acc.add(log_norm(j_cc) + mi * op_norm_bound(j_c_et));
    ml_neg.add(-log_min(j_et_et));
    nrm_et_c.add(op_norm_bound(j_et_c));
  });
  cert.mu_M = mu_acc.interval();
  cert.xi_M = (-ml_neg.interval()) - invM * nrm_et_c.interval();
  cert.ok = cert.mu_M.hi() < 0.0 && cert.xi_M.lo() > cert.mu_M.hi();
  cert.verdict = cert.ok ? Verdict::verified : Verdict::undetermined;
  return cert;
}

IntervalVector eval_graph(const ManifoldEnclosure& m, const IntervalVector& arg,
                          const Interval& theta) {
  const SplitBlock& blk = m.block;
  const std::vector<int> dom = expanding_indices(blk, m.which);
  const std::vector<int> cod = contracting_indices(blk, m.which);
  if (arg.dim() != static_cast<int>(dom.size()))
    throw std::invalid_argument("eval_graph: argument dimension mismatch");
  double dom_radius = (m.which == ManifoldSide::unstable) ? blk.x_radius : blk.y_radius;
  if (euclid_norm_bound(arg).hi() > dom_radius * (1.0 + 1e-12))
    throw std::domain_error("eval_graph: argument outside the block domain factor");
  if (!blk.theta.contains(theta))
    throw std::domain_error("eval_graph: theta outside the certified range");

  IntervalVector anchor_dom = pick(m.fixed_point, dom);
  IntervalVector anchor_cod = pick(m.fixed_point, cod);
  double dist = euclid_norm_bound(arg - anchor_dom).hi();
  double theta_slack = 0.0;
  if (m.slope_bound > 0.0 && theta.width() > 0.0)
    theta_slack = mul_up(m.slope_bound,
                         div_up(theta.width(), m.theta_scale));
  double radius = add_up(mul_up(m.L, dist), theta_slack);
  IntervalVector out(anchor_cod.dim());
  for (int i = 0; i < out.dim(); ++i) out[i] = anchor_cod[i] + Interval::ball(radius);
  return out;
}

IntervalVector exit_point(const ManifoldEnclosure& m, const Interval& theta) {
  if (m.which != ManifoldSide::unstable || m.block.u != 1)
    throw std::invalid_argument("exit_point: needs a 1-D unstable graph");
  double x = m.launch_branch >= 0 ? m.block.x_radius : -m.block.x_radius;
  IntervalVector arg{Interval(x)};
  IntervalVector w = eval_graph(m, arg, theta);
  IntervalVector p(m.block.dim());
  p[0] = Interval(x);
  for (int i = 0; i < m.block.s; ++i) p[m.block.u + i] = w[i];
  return p;
}

}  // namespace homoclinic
