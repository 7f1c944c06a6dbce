#pragma once

#include <initializer_list>
#include <vector>

#include "homoclinic/interval.hpp"

namespace homoclinic {

using VecD = std::vector<double>;
using MatD = std::vector<std::vector<double>>;

/// A box: product of intervals, one per coordinate.
class IntervalVector {
 public:
  IntervalVector() = default;
  explicit IntervalVector(int dim) : v_(static_cast<size_t>(dim)) { require_dim(dim); }
  IntervalVector(std::initializer_list<Interval> init) : v_(init) {}
  explicit IntervalVector(const VecD& p) {
    v_.reserve(p.size());
    for (double x : p) v_.emplace_back(x);
  }

  int dim() const { return static_cast<int>(v_.size()); }
  Interval& operator[](int i) { return v_[static_cast<size_t>(i)]; }
  const Interval& operator[](int i) const { return v_[static_cast<size_t>(i)]; }

  VecD mid() const;
  bool is_finite() const;
  bool contains(const VecD& p) const;
  bool contains(const IntervalVector& o) const;
  bool subset_of(const IntervalVector& o) const { return o.contains(*this); }
  bool interior_subset_of(const IntervalVector& o) const;
  double max_width() const;
  double max_rad() const;

  IntervalVector widened(double eps) const;
  static IntervalVector hull(const IntervalVector& a, const IntervalVector& b);
  std::optional<IntervalVector> intersect(const IntervalVector& o) const;

  /// Sub-box of coordinates [from, from+len).
  IntervalVector slice(int from, int len) const;

  friend IntervalVector operator+(const IntervalVector& a, const IntervalVector& b);
  friend IntervalVector operator-(const IntervalVector& a, const IntervalVector& b);
  IntervalVector operator-() const;
  friend IntervalVector operator*(const Interval& s, const IntervalVector& v);

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

 private:
  static void require_dim(int d) {
    if (d < 0) throw std::invalid_argument("IntervalVector: negative dimension");
  }
  std::vector<Interval> v_;
};

/// Rectangular interval matrix: the set of all real matrices with entries in
/// the given intervals.
class IntervalMatrix {
 public:
  IntervalMatrix() : rows_(0), cols_(0) {}
  IntervalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), m_(static_cast<size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("IntervalMatrix: negative size");
  }
  explicit IntervalMatrix(const MatD& a);

  static IntervalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Interval& at(int i, int j) { return m_[static_cast<size_t>(i * cols_ + j)]; }
  const Interval& at(int i, int j) const { return m_[static_cast<size_t>(i * cols_ + j)]; }

  MatD mid() const;
  bool is_finite() const;
  bool contains(const MatD& a) const;
  bool contains(const IntervalMatrix& o) const;
  double max_width() const;

  IntervalMatrix transpose() const;
  IntervalMatrix block(int i0, int j0, int nr, int nc) const;
  IntervalVector col(int j) const;
  IntervalVector row(int i) const;

  friend IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
  friend IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
  IntervalMatrix operator-() const;
  friend IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a);

 private:
  int rows_, cols_;
  std::vector<Interval> m_;
};

IntervalMatrix mat_mul(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalVector mat_vec(const IntervalMatrix& a, const IntervalVector& x);

/// Thrown when interval Gaussian elimination meets a pivot containing zero,
/// i.e. the interval matrix is not verifiably invertible.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enclosure of {A^{-1} b : A in a, b in rhs} by interval Gaussian
/// elimination with partial pivoting on midpoints. Throws
/// SingularMatrixError if some pivot interval contains zero; success
/// certifies every real matrix in `a` is invertible.
IntervalVector solve_linear(const IntervalMatrix& a, const IntervalVector& rhs);

/// Enclosure of {A^{-1} : A in a}; columnwise solve_linear against identity.
IntervalMatrix mat_inverse(const IntervalMatrix& a);

/// Interval [n_lo, n_hi] containing the Euclidean norm of every point
/// vector in the box.
Interval euclid_norm_bound(const IntervalVector& v);

/// Interval containing the Euclidean operator norm of every point matrix in
/// the enclosure. Upper bound: sqrt of a Gershgorin bound on the spectral
/// radius of A^T A; lower bound: largest column/row norm lower bound.
Interval op_norm_bound(const IntervalMatrix& m);

/// Enclosure of the dot product.
Interval dot(const IntervalVector& a, const IntervalVector& b);

}  // namespace homoclinic
