#include "homoclinic/box.hpp"

#include <algorithm>
#include <cmath>

namespace homoclinic {

namespace {
void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace

VecD IntervalVector::mid() const {
  VecD m(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) m[i] = v_[i].mid();
  return m;
}

bool IntervalVector::is_finite() const {
  for (const auto& x : v_)
    if (!x.is_finite()) return false;
  return true;
}

bool IntervalVector::contains(const VecD& p) const {
  if (static_cast<int>(p.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!v_[static_cast<size_t>(i)].contains(p[static_cast<size_t>(i)])) return false;
  return true;
}

bool IntervalVector::contains(const IntervalVector& o) const {
  if (o.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!(*this)[i].contains(o[i])) return false;
  return true;
}

bool IntervalVector::interior_subset_of(const IntervalVector& o) const {
  if (o.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!(*this)[i].interior_subset_of(o[i])) return false;
  return true;
}

double IntervalVector::max_width() const {
  double w = 0.0;
  for (const auto& x : v_) w = std::max(w, x.width());
  return w;
}

double IntervalVector::max_rad() const {
  double w = 0.0;
  for (const auto& x : v_) w = std::max(w, x.rad());
  return w;
}

IntervalVector IntervalVector::widened(double eps) const {
  IntervalVector r(*this);
  for (auto& x : r.v_) x = x.widened(eps);
  return r;
}

IntervalVector IntervalVector::hull(const IntervalVector& a, const IntervalVector& b) {
  require_same_dim(a.dim(), b.dim(), "IntervalVector::hull");
  IntervalVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = Interval::hull(a[i], b[i]);
  return r;
}

std::optional<IntervalVector> IntervalVector::intersect(const IntervalVector& o) const {
  require_same_dim(dim(), o.dim(), "IntervalVector::intersect");
  IntervalVector r(dim());
  for (int i = 0; i < dim(); ++i) {
    auto c = (*this)[i].intersect(o[i]);
    if (!c) return std::nullopt;
    r[i] = *c;
  }
  return r;
}

IntervalVector IntervalVector::slice(int from, int len) const {
  IntervalVector r(len);
  for (int i = 0; i < len; ++i) r[i] = (*this)[from + i];
  return r;
}

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b) {
  require_same_dim(a.dim(), b.dim(), "IntervalVector::operator+");
  IntervalVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntervalVector operator-(const IntervalVector& a, const IntervalVector& b) {
  require_same_dim(a.dim(), b.dim(), "IntervalVector::operator-");
  IntervalVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntervalVector IntervalVector::operator-() const {
  IntervalVector r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = -(*this)[i];
  return r;
}

IntervalVector operator*(const Interval& s, const IntervalVector& v) {
  IntervalVector r(v.dim());
  for (int i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

IntervalMatrix::IntervalMatrix(const MatD& a)
    : rows_(static_cast<int>(a.size())), cols_(a.empty() ? 0 : static_cast<int>(a[0].size())),
      m_(static_cast<size_t>(rows_ * cols_)) {
  for (int i = 0; i < rows_; ++i) {
    if (static_cast<int>(a[static_cast<size_t>(i)].size()) != cols_)
      throw std::invalid_argument("IntervalMatrix: ragged rows");
    for (int j = 0; j < cols_; ++j)
      at(i, j) = Interval(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
}

IntervalMatrix IntervalMatrix::identity(int n) {
  IntervalMatrix r(n, n);
  for (int i = 0; i < n; ++i) r.at(i, i) = Interval(1.0);
  return r;
}

MatD IntervalMatrix::mid() const {
  MatD m(static_cast<size_t>(rows_), VecD(static_cast<size_t>(cols_)));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(i, j).mid();
  return m;
}

bool IntervalMatrix::is_finite() const {
  for (const auto& x : m_)
    if (!x.is_finite()) return false;
  return true;
}

bool IntervalMatrix::contains(const MatD& a) const {
  if (static_cast<int>(a.size()) != rows_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).contains(a[static_cast<size_t>(i)][static_cast<size_t>(j)])) return false;
  return true;
}

bool IntervalMatrix::contains(const IntervalMatrix& o) const {
  if (o.rows_ != rows_ || o.cols_ != cols_) return false;
  for (size_t k = 0; k < m_.size(); ++k)
    if (!m_[k].contains(o.m_[k])) return false;
  return true;
}

double IntervalMatrix::max_width() const {
  double w = 0.0;
  for (const auto& x : m_) w = std::max(w, x.width());
  return w;
}

IntervalMatrix IntervalMatrix::transpose() const {
  IntervalMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntervalMatrix IntervalMatrix::block(int i0, int j0, int nr, int nc) const {
  IntervalMatrix r(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r.at(i, j) = at(i0 + i, j0 + j);
  return r;
}

IntervalVector IntervalMatrix::col(int j) const {
  IntervalVector r(rows_);
  for (int i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

IntervalVector IntervalMatrix::row(int i) const {
  IntervalVector r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("IntervalMatrix::operator+: size mismatch");
  IntervalMatrix r(a.rows_, a.cols_);
  for (size_t k = 0; k < r.m_.size(); ++k) r.m_[k] = a.m_[k] + b.m_[k];
  return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("IntervalMatrix::operator-: size mismatch");
  IntervalMatrix r(a.rows_, a.cols_);
  for (size_t k = 0; k < r.m_.size(); ++k) r.m_[k] = a.m_[k] - b.m_[k];
  return r;
}

IntervalMatrix IntervalMatrix::operator-() const {
  IntervalMatrix r(rows_, cols_);
  for (size_t k = 0; k < m_.size(); ++k) r.m_[k] = -m_[k];
  return r;
}

IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a) {
  IntervalMatrix r(a.rows_, a.cols_);
  for (size_t k = 0; k < r.m_.size(); ++k) r.m_[k] = s * a.m_[k];
  return r;
}

IntervalMatrix mat_mul(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: size mismatch");
  IntervalMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Interval s;
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

IntervalVector mat_vec(const IntervalMatrix& a, const IntervalVector& x) {
  if (a.cols() != x.dim()) throw std::invalid_argument("mat_vec: size mismatch");
  IntervalVector r(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Interval s;
    for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * x[k];
    r[i] = s;
  }
  return r;
}

IntervalVector solve_linear(const IntervalMatrix& a, const IntervalVector& rhs) {
  const int n = a.rows();
  if (a.cols() != n || rhs.dim() != n)
    throw std::invalid_argument("solve_linear: need square system");
  IntervalMatrix u = a;
  IntervalVector b = rhs;
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;

  for (int k = 0; k < n; ++k) {
    // pivot by midpoint magnitude
    int piv = k;
    double best = std::fabs(u.at(k, k).mid());
    for (int i = k + 1; i < n; ++i) {
      double c = std::fabs(u.at(i, k).mid());
      if (c > best) { best = c; piv = i; }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(u.at(k, j), u.at(piv, j));
      std::swap(b[k], b[piv]);
    }
    if (u.at(k, k).contains(0.0))
      throw SingularMatrixError("interval pivot contains zero at column " + std::to_string(k));
    for (int i = k + 1; i < n; ++i) {
      Interval f = u.at(i, k) / u.at(k, k);
      u.at(i, k) = Interval();
      for (int j = k + 1; j < n; ++j) u.at(i, j) -= f * u.at(k, j);
      b[i] -= f * b[k];
    }
  }
  IntervalVector x(n);
  for (int i = n - 1; i >= 0; --i) {
    Interval s = b[i];
    for (int j = i + 1; j < n; ++j) s -= u.at(i, j) * x[j];
    x[i] = s / u.at(i, i);
  }
  return x;
}

IntervalMatrix mat_inverse(const IntervalMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("mat_inverse: need square matrix");
  IntervalMatrix r(n, n);
  for (int j = 0; j < n; ++j) {
    IntervalVector e(n);
    e[j] = Interval(1.0);
    IntervalVector c = solve_linear(a, e);
    for (int i = 0; i < n; ++i) r.at(i, j) = c[i];
  }
  return r;
}

Interval euclid_norm_bound(const IntervalVector& v) {
  Interval s;
  for (int i = 0; i < v.dim(); ++i) s += v[i].sqr();
  return s.sqrt();
}

Interval op_norm_bound(const IntervalMatrix& m) {
  // Upper: Gershgorin on A^T A, then sqrt.
  IntervalMatrix ata = mat_mul(m.transpose(), m);
  double up = 0.0;
  for (int i = 0; i < ata.rows(); ++i) {
    double row = ata.at(i, i).hi();
    for (int j = 0; j < ata.cols(); ++j)
      if (j != i) row = add_up(row, ata.at(i, j).mag());
    up = std::max(up, row);
  }
  up = sqrt_up(std::max(0.0, up));
  // Lower: ||A|| >= ||A e_j|| and ||A^T e_i||, valid for every member.
  double lo = 0.0;
  for (int j = 0; j < m.cols(); ++j) lo = std::max(lo, euclid_norm_bound(m.col(j)).lo());
  for (int i = 0; i < m.rows(); ++i) lo = std::max(lo, euclid_norm_bound(m.row(i)).lo());
  lo = std::min(lo, up);
  return Interval(lo, up);
}

Interval dot(const IntervalVector& a, const IntervalVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: size mismatch");
  Interval s;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace homoclinic
