#pragma once

#include <complex>
#include <string>
#include <vector>

#include "homoclinic/box.hpp"
#include "homoclinic/newton.hpp"

namespace homoclinic {

enum class EigenKind { real, complex_pair };

/// Verified enclosure of an eigenpair of every real matrix in an interval
/// matrix. The eigenvector is normalized by freezing one coordinate (two for
/// complex pairs: one in the real part, one in the imaginary part).
struct EigenEnclosure {
  EigenKind kind = EigenKind::real;
  bool verified = false;
  Interval lambda_re, lambda_im;
  IntervalVector vector_re, vector_im;
  int fixed_index_re = 0;
  int fixed_index_im = -1;
  double fixed_value_re = 1.0;
  double fixed_value_im = 0.0;
  std::string reason;
};

/// Verify a real eigenpair of A near the given approximation. fixed_index < 0
/// selects the largest-magnitude component of the approximate vector.
EigenEnclosure enclose_real_eigenpair(const IntervalMatrix& A, double approx_lambda,
                                      const VecD& approx_vec, int fixed_index = -1);

/// Verify a complex-conjugate eigenpair near the given approximation.
/// fixed indices < 0 pick the largest-magnitude components of re/im parts.
EigenEnclosure enclose_complex_eigenpair(const IntervalMatrix& A,
                                         std::complex<double> approx_lambda,
                                         const std::vector<std::complex<double>>& approx_vec,
                                         int fixed_index_re = -1, int fixed_index_im = -1);

/// Interval evaluation of the eigen residual over the stored enclosure:
/// A x - lambda x (real) or the two real equations of the complex system.
/// Every component must contain zero for a sound enclosure.
IntervalVector eigen_residual(const IntervalMatrix& A, const EigenEnclosure& e);

bool residual_contains_zero(const IntervalMatrix& A, const EigenEnclosure& e);

}  // namespace homoclinic
