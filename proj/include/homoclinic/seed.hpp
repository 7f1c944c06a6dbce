#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "homoclinic/box.hpp"

namespace homoclinic {

/// Nonrigorous floating-point helpers that produce starting guesses for the
/// interval verification steps. Nothing here is trusted by any proof.
namespace seed {

using Cplx = std::complex<double>;

/// Solve Ax = b by Gaussian elimination with partial pivoting.
VecD solve(MatD a, VecD b);

/// Damped Newton iteration for f(x) = 0.
VecD newton(const std::function<VecD(const VecD&)>& f,
            const std::function<MatD(const VecD&)>& jac, VecD x0,
            int max_iter = 100, double tol = 1e-14);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi; also returns the
/// accumulated rotation (columns = eigenvectors).
void jacobi_symmetric(MatD a, VecD& eigenvalues, MatD& eigenvectors,
                      int max_sweeps = 60);

struct EigPair {
  Cplx lambda;
  std::vector<Cplx> vec;
};

/// All eigenpairs of a real 2x2 or 3x3 matrix via the characteristic
/// polynomial; eigenvectors from the nullspace of A - lambda I.
std::vector<EigPair> eig_small(const MatD& a);

}  // namespace seed
}  // namespace homoclinic
