#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace homoclinic {

/// A closed interval [lo, hi] of machine doubles, lo <= hi.
///
/// All arithmetic rounds outward, so the result always contains the exact
/// real-arithmetic image of the operand sets. Directed rounding is realized
/// by next-float nudging: each bound is computed in round-to-nearest, the
/// exact rounding residual is recovered (TwoSum / FMA), and the bound is
/// moved one ulp outward only when the nearest result landed on the inside.
/// Exact operations (including products with exact zeros) stay exact.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  explicit Interval(double v) : lo_(v), hi_(v) { check(); }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) { check(); }

  static Interval hull(double a, double b) {
    return a <= b ? Interval(a, b) : Interval(b, a);
  }
  static Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }
  /// Symmetric interval [-r, r].
  static Interval ball(double r) { return Interval(-r, r); }
  static Interval entire();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  /// Upper bound on the radius (outward).
  double rad() const;
  /// Upper bound on hi - lo (outward).
  double width() const;
  /// max(|lo|, |hi|): magnitude bound valid for every element.
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  /// min |x| over the interval (0 if it straddles zero).
  double mig() const {
    if (contains(0.0)) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool is_point() const { return lo_ == hi_; }
  bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool subset_of(const Interval& o) const { return o.contains(*this); }
  /// Strict containment in the interior, needed by the Newton test.
  bool interior_subset_of(const Interval& o) const {
    return o.lo_ < lo_ && hi_ < o.hi_;
  }
  bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  std::optional<Interval> intersect(const Interval& o) const {
    double l = std::max(lo_, o.lo_), h = std::min(hi_, o.hi_);
    if (l > h) return std::nullopt;
    return Interval(l, h);
  }

  Interval operator-() const { return Interval(-hi_, -lo_); }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Requires 0 not in b; throws std::domain_error otherwise.
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval operator+(const Interval& a, double b) { return a + Interval(b); }
  friend Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
  friend Interval operator-(const Interval& a, double b) { return a - Interval(b); }
  friend Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
  friend Interval operator*(const Interval& a, double b) { return a * Interval(b); }
  friend Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
  friend Interval operator/(const Interval& a, double b) { return a / Interval(b); }
  friend Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

  bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

  /// Enclosure of {x^2 : x in this}; tighter than (*this) * (*this).
  Interval sqr() const;
  /// Enclosure of sqrt over the interval; requires lo >= 0.
  Interval sqrt() const;
  Interval abs() const {
    if (lo_ >= 0.0) return *this;
    if (hi_ <= 0.0) return -*this;
    return Interval(0.0, mag());
  }

  /// Widen both bounds outward by eps (absolute).
  Interval widened(double eps) const;
  /// Widen both bounds outward by one ulp.
  Interval bumped() const;

  /// Outward-rounded enclosure of a decimal string (e.g. "0.1", "1e-4").
  /// Exact decimals come back as points. Throws std::invalid_argument on
  /// malformed input.
  static Interval from_decimal(std::string_view s);

  std::string to_string() const;

 private:
  void check() const {
    if (std::isnan(lo_) || std::isnan(hi_) || lo_ > hi_)
      throw std::invalid_argument("Interval: invalid bounds [" +
                                  std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  }
  double lo_, hi_;
};

double next_up(double x);
double next_down(double x);

/// Round-down / round-up sums, products, quotients, sqrt of doubles.
/// Exact results are returned unchanged.
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

}  // namespace homoclinic
