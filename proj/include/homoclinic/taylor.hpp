#pragma once

#include <vector>

#include "homoclinic/interval.hpp"

namespace homoclinic {

/// Truncated univariate Taylor series with interval coefficients. The number
/// of stored coefficients is the valid length; binary operations truncate to
/// the shorter operand, so a product of series valid through order k is valid
/// through order k.
struct TSeries {
  std::vector<Interval> c;

  TSeries() = default;
  explicit TSeries(Interval c0) : c{c0} {}
  static TSeries constant(Interval v, int len) {
    TSeries s;
    s.c.assign(static_cast<size_t>(len), Interval());
    s.c[0] = v;
    return s;
  }

  int len() const { return static_cast<int>(c.size()); }
  const Interval& operator[](int j) const { return c[static_cast<size_t>(j)]; }
  Interval& operator[](int j) { return c[static_cast<size_t>(j)]; }

  /// Polynomial value sum_j c_j h^j for point h, by interval Horner.
  Interval eval(double h) const {
    Interval acc;
    for (int j = len() - 1; j >= 0; --j) acc = acc * Interval(h) + c[static_cast<size_t>(j)];
    return acc;
  }
};

inline TSeries operator+(const TSeries& a, const TSeries& b) {
  int n = std::min(a.len(), b.len());
  TSeries r;
  r.c.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) r[j] = a[j] + b[j];
  return r;
}

inline TSeries operator-(const TSeries& a, const TSeries& b) {
  int n = std::min(a.len(), b.len());
  TSeries r;
  r.c.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) r[j] = a[j] - b[j];
  return r;
}

inline TSeries operator-(const TSeries& a) {
  TSeries r;
  r.c.resize(static_cast<size_t>(a.len()));
  for (int j = 0; j < a.len(); ++j) r[j] = -a[j];
  return r;
}

inline TSeries operator*(const TSeries& a, const TSeries& b) {
  int n = std::min(a.len(), b.len());
  TSeries r;
  r.c.assign(static_cast<size_t>(n), Interval());
  for (int j = 0; j < n; ++j) {
    Interval s;
    for (int i = 0; i <= j; ++i) s += a[i] * b[j - i];
    r[j] = s;
  }
  return r;
}

inline TSeries operator*(const Interval& s, const TSeries& a) {
  TSeries r;
  r.c.resize(static_cast<size_t>(a.len()));
  for (int j = 0; j < a.len(); ++j) r[j] = s * a[j];
  return r;
}

inline TSeries operator+(const TSeries& a, const Interval& s) {
  TSeries r = a;
  r[0] += s;
  return r;
}

inline TSeries operator-(const TSeries& a, const Interval& s) {
  TSeries r = a;
  r[0] -= s;
  return r;
}

using TSeriesVec = std::vector<TSeries>;
using TSeriesMat = std::vector<std::vector<TSeries>>;

}  // namespace homoclinic
