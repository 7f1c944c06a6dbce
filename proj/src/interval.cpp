#include "homoclinic/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <limits>

namespace homoclinic {

double next_up(double x) {
  if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) return x;
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

double next_down(double x) {
  if (std::isnan(x) || x == -std::numeric_limits<double>::infinity()) return x;
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace {

// Knuth TwoSum: s = fl(a+b), err exact with a+b = s + err.
inline double two_sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

// FMA residual: p = fl(a*b), err = a*b - p exactly.
inline double two_prod_err(double a, double b, double p) {
  return std::fma(a, b, -p);
}

}  // namespace

double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s < 0 ? s : next_down(s);
  double e = two_sum_err(a, b, s);
  return e < 0.0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s > 0 ? s : next_up(s);
  double e = two_sum_err(a, b, s);
  return e > 0.0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p < 0 ? p : next_down(p);
  double e = two_prod_err(a, b, p);
  return e < 0.0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p > 0 ? p : next_up(p);
  double e = two_prod_err(a, b, p);
  return e > 0.0 ? next_up(p) : p;
}

double div_down(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return q < 0 ? q : next_down(q);
  // residual r = q*b - a decides the side: a/b - q = -r/b.
  double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  bool exact_low = (r > 0.0) == (b > 0.0);  // true quotient below q
  return exact_low ? next_down(q) : q;
}

double div_up(double a, double b) {
  double q = a / b;
  if (!std::isfinite(q)) return q > 0 ? q : next_up(q);
  double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  bool exact_low = (r > 0.0) == (b > 0.0);
  return exact_low ? q : next_up(q);
}

double sqrt_down(double a) {
  double s = std::sqrt(a);
  double r = std::fma(s, s, -a);  // s^2 - a
  return r > 0.0 ? next_down(s) : s;
}

double sqrt_up(double a) {
  double s = std::sqrt(a);
  double r = std::fma(s, s, -a);
  return r < 0.0 ? next_up(s) : s;
}

Interval Interval::entire() {
  return Interval(-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity());
}

double Interval::rad() const {
  double m = mid();
  return std::max(sub_up(hi_, m), sub_up(m, lo_));
}

double Interval::width() const { return sub_up(hi_, lo_); }

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_));
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(sub_down(a.lo_, b.hi_), sub_up(a.hi_, b.lo_));
}

Interval operator*(const Interval& a, const Interval& b) {
  // Sign-case split keeps products of exact zeros exact and avoids 0*inf.
  const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
  if (a.is_point() && a.lo_ == 0.0) return Interval();
  if (b.is_point() && b.lo_ == 0.0) return Interval();
  double lo, hi;
  if (al >= 0.0) {
    if (bl >= 0.0) { lo = mul_down(al, bl); hi = mul_up(ah, bh); }
    else if (bh <= 0.0) { lo = mul_down(ah, bl); hi = mul_up(al, bh); }
    else { lo = mul_down(ah, bl); hi = mul_up(ah, bh); }
  } else if (ah <= 0.0) {
    if (bl >= 0.0) { lo = mul_down(al, bh); hi = mul_up(ah, bl); }
    else if (bh <= 0.0) { lo = mul_down(ah, bh); hi = mul_up(al, bl); }
    else { lo = mul_down(al, bh); hi = mul_up(al, bl); }
  } else {
    if (bl >= 0.0) { lo = mul_down(al, bh); hi = mul_up(ah, bh); }
    else if (bh <= 0.0) { lo = mul_down(ah, bl); hi = mul_up(al, bl); }
    else {
      lo = std::min(mul_down(al, bh), mul_down(ah, bl));
      hi = std::max(mul_up(al, bl), mul_up(ah, bh));
    }
  }
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0))
    throw std::domain_error("Interval division by an interval containing zero");
  const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
  double lo, hi;
  if (bl > 0.0) {
    lo = al >= 0.0 ? div_down(al, bh) : div_down(al, bl);
    hi = ah >= 0.0 ? div_up(ah, bl) : div_up(ah, bh);
  } else {
    lo = ah <= 0.0 ? div_down(ah, bl) : div_down(ah, bh);
    hi = al <= 0.0 ? div_up(al, bh) : div_up(al, bl);
  }
  return Interval(lo, hi);
}

Interval Interval::sqr() const {
  if (lo_ >= 0.0) return Interval(mul_down(lo_, lo_), mul_up(hi_, hi_));
  if (hi_ <= 0.0) return Interval(mul_down(hi_, hi_), mul_up(lo_, lo_));
  double m = mag();
  return Interval(0.0, mul_up(m, m));
}

Interval Interval::sqrt() const {
  if (lo_ < 0.0) throw std::domain_error("Interval::sqrt of a partly negative interval");
  return Interval(sqrt_down(lo_), sqrt_up(hi_));
}

Interval Interval::widened(double eps) const {
  if (eps < 0.0) throw std::invalid_argument("Interval::widened: negative eps");
  return Interval(sub_down(lo_, eps), add_up(hi_, eps));
}

Interval Interval::bumped() const { return Interval(next_down(lo_), next_up(hi_)); }

Interval Interval::from_decimal(std::string_view s) {
  std::string buf(s);
  mpfr_t v;
  mpfr_init2(v, 53);
  double lo, hi;
  {
    char* end = nullptr;
    int ret = mpfr_strtofr(v, buf.c_str(), &end, 10, MPFR_RNDD);
    if (end == buf.c_str() || *end != '\0') {
      mpfr_clear(v);
      throw std::invalid_argument("Interval::from_decimal: cannot parse '" + buf + "'");
    }
    lo = mpfr_get_d(v, MPFR_RNDD);
    (void)ret;
  }
  {
    char* end = nullptr;
    mpfr_strtofr(v, buf.c_str(), &end, 10, MPFR_RNDU);
    hi = mpfr_get_d(v, MPFR_RNDU);
  }
  mpfr_clear(v);
  return Interval(lo, hi);
}

std::string Interval::to_string() const {
  std::array<char, 64> b1{}, b2{};
  auto r1 = std::to_chars(b1.data(), b1.data() + b1.size(), lo_);
  auto r2 = std::to_chars(b2.data(), b2.data() + b2.size(), hi_);
  return "[" + std::string(b1.data(), r1.ptr) + ", " + std::string(b2.data(), r2.ptr) + "]";
}

}  // namespace homoclinic
