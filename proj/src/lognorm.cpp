#include "homoclinic/lognorm.hpp"

#include <algorithm>
#include <cmath>

#include "homoclinic/eigen.hpp"
#include "homoclinic/seed.hpp"

namespace homoclinic {

namespace {

IntervalMatrix symmetric_part(const IntervalMatrix& A) {
  const int n = A.rows();
  IntervalMatrix s(n, n);
  Interval half(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(i, j) = half * (A.at(i, j) + A.at(j, i));
  return s;
}

// Gershgorin enclosure of the extreme eigenvalues of a symmetric interval
// matrix: [max_i diag_lo, max disc upper] for the max eigenvalue and the
// mirror for the min. The diagonal lower bound uses lambda_max >= e_i^T S e_i.
void gershgorin_extremes(const IntervalMatrix& S, Interval& lam_max, Interval& lam_min) {
  const int n = S.rows();
  double up = -std::numeric_limits<double>::infinity();
  double dn = std::numeric_limits<double>::infinity();
  double max_diag_lo = -std::numeric_limits<double>::infinity();
  double min_diag_hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius = add_up(radius, S.at(i, j).mag());
    up = std::max(up, add_up(S.at(i, i).hi(), radius));
    dn = std::min(dn, sub_down(S.at(i, i).lo(), radius));
    max_diag_lo = std::max(max_diag_lo, S.at(i, i).lo());
    min_diag_hi = std::min(min_diag_hi, S.at(i, i).hi());
  }
  lam_max = Interval(max_diag_lo, up);
  lam_min = Interval(dn, min_diag_hi);
}

// Closed-form symmetric 2x2 eigenvalue enclosures.
void closed_form_2x2(const IntervalMatrix& S, Interval& lam_max, Interval& lam_min) {
  Interval p = S.at(0, 0), r = S.at(1, 1), q = S.at(0, 1);
  Interval half(0.5);
  Interval mean = half * (p + r);
  Interval disc = ((half * (p - r)).sqr() + q.sqr()).sqrt();
  lam_max = mean + disc;
  lam_min = mean - disc;
}

// Refine the extreme eigenvalue of a symmetric interval matrix by verified
// eigenpair enclosures of all n eigenvalues, requiring pairwise disjoint
// enclosures so the extreme one is identified for every member matrix.
bool newton_extremes(const IntervalMatrix& S, Interval& lam_max, Interval& lam_min) {
  const int n = S.rows();
  VecD evals;
  MatD evecs;
  seed::jacobi_symmetric(S.mid(), evals, evecs);
  std::vector<Interval> lams;
  for (int k = 0; k < n; ++k) {
    VecD v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = evecs[static_cast<size_t>(i)][static_cast<size_t>(k)];
    EigenEnclosure e = enclose_real_eigenpair(S, evals[static_cast<size_t>(k)], v);
    if (!e.verified) return false;
    lams.push_back(e.lambda_re);
  }
  std::sort(lams.begin(), lams.end(),
            [](const Interval& a, const Interval& b) { return a.mid() < b.mid(); });
  for (size_t k = 0; k + 1 < lams.size(); ++k)
    if (lams[k].hi() >= lams[k + 1].lo()) return false;  // not separated
  lam_max = lams.back();
  lam_min = lams.front();
  return true;
}

void extreme_sym_eigs(const IntervalMatrix& A, bool tighten, Interval& lam_max,
                      Interval& lam_min) {
  if (A.rows() != A.cols()) throw std::invalid_argument("log_norm: square matrix required");
  IntervalMatrix S = symmetric_part(A);
  const int n = S.rows();
  if (n == 1) {
    lam_max = lam_min = S.at(0, 0);
    return;
  }
  Interval gmax, gmin;
  gershgorin_extremes(S, gmax, gmin);
  if (n == 2) {
    Interval cmax, cmin;
    closed_form_2x2(S, cmax, cmin);
    lam_max = cmax.intersect(gmax).value_or(cmax);
    lam_min = cmin.intersect(gmin).value_or(cmin);
    return;
  }
  lam_max = gmax;
  lam_min = gmin;
  if (tighten) {
    Interval tmax, tmin;
    if (newton_extremes(S, tmax, tmin)) {
      if (auto c = lam_max.intersect(tmax)) lam_max = *c;
      if (auto c = lam_min.intersect(tmin)) lam_min = *c;
    }
  }
}

}  // namespace

Interval log_norm(const IntervalMatrix& A, bool tighten) {
  Interval lam_max, lam_min;
  extreme_sym_eigs(A, tighten, lam_max, lam_min);
  return lam_max;
}

Interval log_min(const IntervalMatrix& A, bool tighten) {
  Interval lam_max, lam_min;
  extreme_sym_eigs(A, tighten, lam_max, lam_min);
  return lam_min;
}

Interval saddle_quantity(const Interval& lambda_u, const Interval& lambda_s_re) {
  return lambda_u + lambda_s_re;
}

SignVerdict sign_of(const Interval& x) {
  if (x.hi() < 0.0) return SignVerdict::negative;
  if (x.lo() > 0.0) return SignVerdict::positive;
  return SignVerdict::undetermined;
}

}  // namespace homoclinic
