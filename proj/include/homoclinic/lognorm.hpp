#pragma once

#include "homoclinic/box.hpp"

namespace homoclinic {

/// Euclidean logarithmic norm l(A) = max spectrum of (A + A^T)/2, enclosed
/// for every real matrix in the interval matrix: the upper bound majorizes
/// l(A) for all members, the lower bound minorizes it. Gershgorin discs give
/// the guaranteed outer bound; for 1x1/2x2 the symmetric eigenvalues are
/// evaluated in closed form, and for larger matrices `tighten` switches on a
/// verified-eigenpair refinement of the extreme eigenvalue.
Interval log_norm(const IntervalMatrix& A, bool tighten = true);

/// Euclidean logarithmic minimum m_l(A) = min spectrum of (A + A^T)/2,
/// enclosed the same way. Satisfies m_l(-A) = -l(A).
Interval log_min(const IntervalMatrix& A, bool tighten = true);

/// lambda_u + Re lambda_s. The sign, when the interval excludes zero,
/// separates the simple from the chaotic homoclinic bifurcation.
Interval saddle_quantity(const Interval& lambda_u, const Interval& lambda_s_re);

enum class SignVerdict { negative, positive, undetermined };
SignVerdict sign_of(const Interval& x);

}  // namespace homoclinic
