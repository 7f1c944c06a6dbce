#include "homoclinic/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace homoclinic {

namespace {

int pick_fixed(const VecD& v, int requested) {
  if (requested >= 0) return requested;
  int best = 0;
  for (size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[static_cast<size_t>(best)])) best = static_cast<int>(i);
  return best;
}

// Embed reduced coordinates into the full vector with one frozen entry.
IntervalVector embed(const IntervalVector& reduced, int fixed_index, double fixed_value,
                     int n) {
  IntervalVector full(n);
  int j = 0;
  for (int i = 0; i < n; ++i) {
    if (i == fixed_index) full[i] = Interval(fixed_value);
    else full[i] = reduced[j++];
  }
  return full;
}

}  // namespace

EigenEnclosure enclose_real_eigenpair(const IntervalMatrix& A, double approx_lambda,
                                      const VecD& approx_vec, int fixed_index) {
  const int n = A.rows();
  EigenEnclosure out;
  out.kind = EigenKind::real;
  out.lambda_im = Interval();
  out.vector_im = IntervalVector(n);
  if (A.cols() != n || static_cast<int>(approx_vec.size()) != n) {
    out.reason = "dimension mismatch";
    return out;
  }
  const int fi = pick_fixed(approx_vec, fixed_index);
  const double fv = approx_vec[static_cast<size_t>(fi)];
  if (fv == 0.0) {
    out.reason = "fixed coordinate of approximate eigenvector is zero";
    return out;
  }
  out.fixed_index_re = fi;
  out.fixed_value_re = fv;

  // Unknowns v = (lambda, x_tilde); system f(v) = A x - lambda x.
  auto fn = [&](const IntervalVector& v) {
    Interval lam = v[0];
    IntervalVector x = embed(v.slice(1, n - 1), fi, fv, n);
    IntervalVector r = mat_vec(A, x);
    for (int i = 0; i < n; ++i) r[i] -= lam * x[i];
    return r;
  };
  auto jac = [&](const IntervalVector& v) {
    Interval lam = v[0];
    IntervalVector x = embed(v.slice(1, n - 1), fi, fv, n);
    IntervalMatrix J(n, n);
    for (int i = 0; i < n; ++i) {
      J.at(i, 0) = -x[i];
      int col = 1;
      for (int k = 0; k < n; ++k) {
        if (k == fi) continue;
        J.at(i, col) = A.at(i, k) - (i == k ? lam : Interval());
        ++col;
      }
    }
    return J;
  };

  VecD v0(static_cast<size_t>(n));
  v0[0] = approx_lambda;
  {
    size_t j = 1;
    for (int i = 0; i < n; ++i)
      if (i != fi) v0[j++] = approx_vec[static_cast<size_t>(i)];
  }
  double scale = std::max(1.0, std::fabs(approx_lambda));
  NewtonResult nr = interval_newton_inflate(fn, jac, v0, 1e-12 * scale);
  if (!nr.verified) {
    out.reason = "interval Newton failed: " + nr.reason;
    return out;
  }
  out.verified = true;
  out.lambda_re = nr.enclosure[0];
  out.vector_re = embed(nr.enclosure.slice(1, n - 1), fi, fv, n);
  return out;
}

EigenEnclosure enclose_complex_eigenpair(const IntervalMatrix& A,
                                         std::complex<double> approx_lambda,
                                         const std::vector<std::complex<double>>& approx_vec,
                                         int fixed_index_re, int fixed_index_im) {
  const int n = A.rows();
  EigenEnclosure out;
  out.kind = EigenKind::complex_pair;
  if (A.cols() != n || static_cast<int>(approx_vec.size()) != n) {
    out.reason = "dimension mismatch";
    return out;
  }
  VecD vre(static_cast<size_t>(n)), vim(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    vre[static_cast<size_t>(i)] = approx_vec[static_cast<size_t>(i)].real();
    vim[static_cast<size_t>(i)] = approx_vec[static_cast<size_t>(i)].imag();
  }
  // Default: freeze both parts of the largest-magnitude complex component.
  // Freezing the largest |re| and |im| entries independently can leave the
  // phase gauge unfixed (singular Newton system).
  int fr = fixed_index_re, fim = fixed_index_im;
  if (fr < 0 || fim < 0) {
    int k = 0;
    for (int i = 1; i < n; ++i)
      if (std::norm(approx_vec[static_cast<size_t>(i)]) >
          std::norm(approx_vec[static_cast<size_t>(k)]))
        k = i;
    if (fr < 0) fr = k;
    if (fim < 0) fim = k;
  }
  const double cr = vre[static_cast<size_t>(fr)], ci = vim[static_cast<size_t>(fim)];
  if (cr == 0.0 && ci == 0.0) {
    out.reason = "fixed component of the approximate eigenvector is zero";
    return out;
  }
  out.fixed_index_re = fr;
  out.fixed_index_im = fim;
  out.fixed_value_re = cr;
  out.fixed_value_im = ci;

  // Unknowns v = (rho, omega, x_re~, x_im~), dimension 2n.
  const int m = 2 * n;
  auto split = [&](const IntervalVector& v, Interval& rho, Interval& om,
                   IntervalVector& xre, IntervalVector& xim) {
    rho = v[0];
    om = v[1];
    xre = embed(v.slice(2, n - 1), fr, cr, n);
    xim = embed(v.slice(2 + (n - 1), n - 1), fim, ci, n);
  };
  auto fn = [&](const IntervalVector& v) {
    Interval rho, om;
    IntervalVector xre, xim;
    split(v, rho, om, xre, xim);
    IntervalVector r(m);
    IntervalVector Are = mat_vec(A, xre), Aim = mat_vec(A, xim);
    for (int i = 0; i < n; ++i) {
      r[i] = Are[i] - rho * xre[i] + om * xim[i];
      r[n + i] = Aim[i] - rho * xim[i] - om * xre[i];
    }
    return r;
  };
  auto jac = [&](const IntervalVector& v) {
    Interval rho, om;
    IntervalVector xre, xim;
    split(v, rho, om, xre, xim);
    IntervalMatrix J(m, m);
    for (int i = 0; i < n; ++i) {
      J.at(i, 0) = -xre[i];
      J.at(i, 1) = xim[i];
      J.at(n + i, 0) = -xim[i];
      J.at(n + i, 1) = -xre[i];
      int col = 2;
      for (int k = 0; k < n; ++k) {
        if (k == fr) continue;
        J.at(i, col) = A.at(i, k) - (i == k ? rho : Interval());
        J.at(n + i, col) = (i == k ? -om : Interval());
        ++col;
      }
      for (int k = 0; k < n; ++k) {
        if (k == fim) continue;
        J.at(i, col) = (i == k ? om : Interval());
        J.at(n + i, col) = A.at(i, k) - (i == k ? rho : Interval());
        ++col;
      }
    }
    return J;
  };

  VecD v0(static_cast<size_t>(m));
  v0[0] = approx_lambda.real();
  v0[1] = approx_lambda.imag();
  {
    size_t j = 2;
    for (int i = 0; i < n; ++i)
      if (i != fr) v0[j++] = vre[static_cast<size_t>(i)];
    for (int i = 0; i < n; ++i)
      if (i != fim) v0[j++] = vim[static_cast<size_t>(i)];
  }
  double scale = std::max(1.0, std::abs(approx_lambda));
  NewtonResult nr = interval_newton_inflate(fn, jac, v0, 1e-12 * scale);
  if (!nr.verified) {
    out.reason = "interval Newton failed: " + nr.reason;
    return out;
  }
  out.verified = true;
  out.lambda_re = nr.enclosure[0];
  out.lambda_im = nr.enclosure[1];
  out.vector_re = embed(nr.enclosure.slice(2, n - 1), fr, cr, n);
  out.vector_im = embed(nr.enclosure.slice(2 + (n - 1), n - 1), fim, ci, n);
  if (out.lambda_im.contains(0.0))
    out.reason = "degenerate pair: omega enclosure contains zero";
  return out;
}

IntervalVector eigen_residual(const IntervalMatrix& A, const EigenEnclosure& e) {
  const int n = A.rows();
  if (e.kind == EigenKind::real) {
    IntervalVector r = mat_vec(A, e.vector_re);
    for (int i = 0; i < n; ++i) r[i] -= e.lambda_re * e.vector_re[i];
    return r;
  }
  IntervalVector r(2 * n);
  IntervalVector Are = mat_vec(A, e.vector_re), Aim = mat_vec(A, e.vector_im);
  for (int i = 0; i < n; ++i) {
    r[i] = Are[i] - e.lambda_re * e.vector_re[i] + e.lambda_im * e.vector_im[i];
    r[n + i] = Aim[i] - e.lambda_re * e.vector_im[i] - e.lambda_im * e.vector_re[i];
  }
  return r;
}

bool residual_contains_zero(const IntervalMatrix& A, const EigenEnclosure& e) {
  for (const Interval& c : eigen_residual(A, e))
    if (!c.contains(0.0)) return false;
  return true;
}

}  // namespace homoclinic
