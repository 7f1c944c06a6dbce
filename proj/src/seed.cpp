#include "homoclinic/seed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homoclinic {
namespace seed {

VecD solve(MatD a, VecD b) {
  const size_t n = a.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    if (a[k][k] == 0.0) throw std::runtime_error("seed::solve: singular matrix");
    for (size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  VecD x(n);
  for (size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * x[j];
    x[ii] = s / a[ii][ii];
  }
  return x;
}

VecD newton(const std::function<VecD(const VecD&)>& f,
            const std::function<MatD(const VecD&)>& jac, VecD x0, int max_iter,
            double tol) {
  for (int it = 0; it < max_iter; ++it) {
    VecD fx = f(x0);
    double nf = 0.0;
    for (double v : fx) nf = std::max(nf, std::fabs(v));
    if (nf < tol) break;
    VecD dx = solve(jac(x0), fx);
    double damp = 1.0;
    for (int half = 0; half < 30; ++half) {
      VecD cand(x0.size());
      for (size_t i = 0; i < x0.size(); ++i) cand[i] = x0[i] - damp * dx[i];
      VecD fc = f(cand);
      double nc = 0.0;
      for (double v : fc) nc = std::max(nc, std::fabs(v));
      if (nc <= nf || damp < 1e-6) {
        x0 = cand;
        break;
      }
      damp *= 0.5;
    }
  }
  return x0;
}

void jacobi_symmetric(MatD a, VecD& eigenvalues, MatD& eigenvectors, int max_sweeps) {
  const size_t n = a.size();
  eigenvectors.assign(n, VecD(n, 0.0));
  for (size_t i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-300) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (size_t k = 0; k < n; ++k) {
          double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
          eigenvectors[k][p] = c * vkp - s * vkq;
          eigenvectors[k][q] = s * vkp + c * vkq;
        }
      }
  }
  eigenvalues.resize(n);
  for (size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

namespace {

// roots of x^2 + px + q
std::vector<Cplx> quadratic_roots(double p, double q) {
  Cplx disc = std::sqrt(Cplx(p * p - 4.0 * q, 0.0));
  Cplx r1 = (-p + disc) / 2.0, r2 = (-p - disc) / 2.0;
  return {r1, r2};
}

std::vector<Cplx> char_roots(const MatD& a) {
  const size_t n = a.size();
  if (n == 2) {
    double tr = a[0][0] + a[1][1];
    double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    return quadratic_roots(-tr, det);
  }
  // n == 3: p(x) = x^3 - c2 x^2 + c1 x - c0
  double c2 = a[0][0] + a[1][1] + a[2][2];
  double c1 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] -
              a[0][2] * a[2][0] + a[1][1] * a[2][2] - a[1][2] * a[2][1];
  double c0 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
              a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
              a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  // one real root by Newton with bisection fallback
  auto p = [&](double x) { return ((x - c2) * x + c1) * x - c0; };
  auto dp = [&](double x) { return (3.0 * x - 2.0 * c2) * x + c1; };
  double bound = 1.0 + std::max({std::fabs(c2), std::fabs(c1), std::fabs(c0)});
  double x = c2 / 3.0;
  for (int it = 0; it < 200; ++it) {
    double d = dp(x);
    double step = d != 0.0 ? p(x) / d : 0.0;
    double xn = x - step;
    if (!std::isfinite(xn) || std::fabs(xn) > 4.0 * bound) break;
    if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) { x = xn; break; }
    x = xn;
  }
  if (std::fabs(p(x)) > 1e-8 * (1.0 + std::fabs(c0))) {
    // bisection over [-bound, bound]
    double lo = -bound, hi = bound;
    if (p(lo) * p(hi) <= 0.0) {
      for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (lo + hi);
        if (p(lo) * p(m) <= 0.0) hi = m; else lo = m;
      }
      x = 0.5 * (lo + hi);
    }
  }
  // deflate: x^3 - c2 x^2 + c1 x - c0 = (x - r)(x^2 + bx + c)
  double bq = x - c2;
  double cq = c1 + bq * x;
  auto rest = quadratic_roots(bq, cq);
  return {Cplx(x, 0.0), rest[0], rest[1]};
}

std::vector<Cplx> null_vector(const MatD& a, Cplx lambda) {
  const size_t n = a.size();
  std::vector<std::vector<Cplx>> m(n, std::vector<Cplx>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m[i][j] = Cplx(a[i][j], 0.0) - (i == j ? lambda : Cplx(0.0));
  // row echelon with partial pivoting; the vector comes from the free column
  std::vector<size_t> pivot_col;
  size_t row = 0;
  std::vector<bool> is_pivot(n, false);
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t piv = row;
    for (size_t i = row + 1; i < n; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    if (std::abs(m[piv][col]) < 1e-10) continue;
    std::swap(m[row], m[piv]);
    for (size_t i = row + 1; i < n; ++i) {
      Cplx f = m[i][col] / m[row][col];
      for (size_t j = col; j < n; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(col);
    is_pivot[col] = true;
    ++row;
  }
  size_t free_col = n - 1;
  for (size_t col = 0; col < n; ++col)
    if (!is_pivot[col]) { free_col = col; break; }
  std::vector<Cplx> v(n, Cplx(0.0));
  v[free_col] = Cplx(1.0);
  for (size_t r = pivot_col.size(); r-- > 0;) {
    size_t pc = pivot_col[r];
    Cplx s(0.0);
    for (size_t j = pc + 1; j < n; ++j) s += m[r][j] * v[j];
    v[pc] = -s / m[r][pc];
  }
  double norm = 0.0;
  for (const auto& c : v) norm += std::norm(c);
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

}  // namespace

std::vector<EigPair> eig_small(const MatD& a) {
  const size_t n = a.size();
  if (n != 2 && n != 3)
    throw std::invalid_argument("seed::eig_small: only 2x2 and 3x3 supported");
  std::vector<EigPair> out;
  for (const Cplx& lam : char_roots(a)) out.push_back({lam, null_vector(a, lam)});
  return out;
}

}  // namespace seed
}  // namespace homoclinic
