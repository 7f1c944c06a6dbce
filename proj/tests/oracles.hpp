#pragma once

// Test-only oracles, deliberately independent of the library's interval
// paths: MPFR big-float arithmetic for containment checks on scalar ops,
// long-double Jacobi sweeps for spectra, and a long-double Taylor integrator
// for reference trajectories.

#include <mpfr.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "homoclinic/box.hpp"

namespace oracle {

using homoclinic::MatD;
using homoclinic::VecD;

// ---------------------------------------------------------------------------
// MPFR scalar oracle: evaluate a binary op at 256 bits and check containment.

class Big {
 public:
  Big() { mpfr_init2(v_, 256); mpfr_set_zero(v_, 1); }
  explicit Big(double d) { mpfr_init2(v_, 256); mpfr_set_d(v_, d, MPFR_RNDN); }
  Big(const Big& o) { mpfr_init2(v_, 256); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big& operator=(const Big& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }

  friend Big operator+(const Big& a, const Big& b) { Big r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator-(const Big& a, const Big& b) { Big r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator*(const Big& a, const Big& b) { Big r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator/(const Big& a, const Big& b) { Big r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Big sqrt() const { Big r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }

  double lo() const { return mpfr_get_d(v_, MPFR_RNDD); }
  double hi() const { return mpfr_get_d(v_, MPFR_RNDU); }

  bool inside(const homoclinic::Interval& iv) const {
    return iv.lo() <= lo() && hi() <= iv.hi();
  }

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// Long-double symmetric eigenvalues (Jacobi) and largest singular value.

using LMat = std::vector<std::vector<long double>>;

inline std::vector<long double> sym_eigenvalues(LMat a) {
  const size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-40L) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0L) continue;
        long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        long double t = (theta >= 0 ? 1.0L : -1.0L) /
                        (std::fabs((double)theta) + std::sqrt((double)(theta * theta + 1)));
        long double c = 1.0L / sqrtl(t * t + 1.0L), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<long double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

inline LMat to_lmat(const MatD& a) {
  LMat r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i].assign(a[i].begin(), a[i].end());
  return r;
}

inline long double sigma_max(const MatD& a) {
  const size_t n = a.size(), m = a[0].size();
  LMat ata(m, std::vector<long double>(m, 0.0L));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t k = 0; k < n; ++k)
        ata[i][j] += (long double)a[k][i] * (long double)a[k][j];
  auto ev = sym_eigenvalues(ata);
  long double mx = 0;
  for (auto v : ev) mx = std::max(mx, v);
  return sqrtl(std::max(0.0L, mx));
}

// ---------------------------------------------------------------------------
// Long-double Taylor reference integrator. The field is supplied as a jet
// recurrence on truncated series; fixed order, fixed micro-steps.

using LSeries = std::vector<long double>;
using LSeriesVec = std::vector<LSeries>;
using LFieldJet = std::function<LSeriesVec(const LSeriesVec&)>;

inline LSeries lmul(const LSeries& a, const LSeries& b) {
  size_t n = std::min(a.size(), b.size());
  LSeries r(n, 0.0L);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i <= j; ++i) r[j] += a[i] * b[j - i];
  return r;
}
inline LSeries ladd(const LSeries& a, const LSeries& b) {
  size_t n = std::min(a.size(), b.size());
  LSeries r(n);
  for (size_t j = 0; j < n; ++j) r[j] = a[j] + b[j];
  return r;
}
inline LSeries lsub(const LSeries& a, const LSeries& b) {
  size_t n = std::min(a.size(), b.size());
  LSeries r(n);
  for (size_t j = 0; j < n; ++j) r[j] = a[j] - b[j];
  return r;
}
inline LSeries lscale(long double s, const LSeries& a) {
  LSeries r(a);
  for (auto& x : r) x *= s;
  return r;
}
inline LSeries lconst(long double v, size_t len) {
  LSeries r(len, 0.0L);
  r[0] = v;
  return r;
}

struct LTrajectory {
  std::vector<long double> state;
  LMat variational;  // d state / d state0
};

// Integrate y' = f(y) (jet form) with Taylor order `ord` and step h.
// jac: long-double Jacobian for the variational ODE (evaluated pointwise,
// stepped with the same Taylor machinery through finite differences of the
// jet would be overkill; classic RK-free approach: include variational
// coordinates in the jet directly by the caller when needed).
inline std::vector<long double> taylor_flow(const LFieldJet& f,
                                            std::vector<long double> y0, double T,
                                            int ord = 24, double h0 = 0.01) {
  const size_t n = y0.size();
  long double t = 0;
  while (t < (long double)T) {
    long double h = std::min((long double)h0, (long double)T - t);
    LSeriesVec u(n);
    for (size_t i = 0; i < n; ++i) u[i] = LSeries{y0[i]};
    for (int k = 0; k < ord; ++k) {
      LSeriesVec fu = f(u);
      for (size_t i = 0; i < n; ++i) u[i].push_back(fu[i][(size_t)k] / (long double)(k + 1));
    }
    for (size_t i = 0; i < n; ++i) {
      long double acc = 0;
      for (int j = ord; j >= 0; --j) acc = acc * h + u[i][(size_t)j];
      y0[i] = acc;
    }
    t += h;
  }
  return y0;
}

// Lorenz-84 jet, long double; hand-coded independently of the library.
inline LFieldJet lorenz84_jet(long double a, long double b, long double F,
                              long double G) {
  return [=](const LSeriesVec& u) {
    const LSeries &X = u[0], &Y = u[1], &Z = u[2];
    size_t len = X.size();
    LSeries f0 = lsub(lsub(lsub(lscale(-1.0L, lmul(Y, Y)), lmul(Z, Z)), lscale(a, X)),
                      lconst(-a * F, len));
    LSeries f1 = ladd(lsub(lsub(lmul(X, Y), lscale(b, lmul(X, Z))), Y), lconst(G, len));
    LSeries f2 = lsub(ladd(lscale(b, lmul(X, Y)), lmul(X, Z)), Z);
    return LSeriesVec{f0, f1, f2};
  };
}

// Lorenz-84 with the 3x3 variational matrix appended (12 jet coordinates).
inline LFieldJet lorenz84_var_jet(long double a, long double b, long double F,
                                  long double G, int sign) {
  return [=](const LSeriesVec& u) {
    size_t len = u[0].size();
    const LSeries &X = u[0], &Y = u[1], &Z = u[2];
    auto base = lorenz84_jet(a, b, F, G)(LSeriesVec{X, Y, Z});
    // J rows as series
    LSeries j00 = lconst(-a, len), j01 = lscale(-2.0L, Y), j02 = lscale(-2.0L, Z);
    LSeries j10 = lsub(Y, lscale(b, Z)), j11 = lsub(X, lconst(1.0L, len)),
            j12 = lscale(-b, X);
    LSeries j20 = ladd(lscale(b, Y), Z), j21 = lscale(b, X), j22 = lsub(X, lconst(1.0L, len));
    LSeries jrow[3][3] = {{j00, j01, j02}, {j10, j11, j12}, {j20, j21, j22}};
    LSeriesVec out(12);
    for (int i = 0; i < 3; ++i) out[(size_t)i] = lscale((long double)sign, base[(size_t)i]);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) {
        LSeries acc = lconst(0.0L, len);
        for (int k = 0; k < 3; ++k)
          acc = ladd(acc, lmul(jrow[i][k], u[(size_t)(3 + 3 * k + c)]));
        out[(size_t)(3 + 3 * i + c)] = lscale((long double)sign, acc);
      }
    return out;
  };
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

}  // namespace oracle
