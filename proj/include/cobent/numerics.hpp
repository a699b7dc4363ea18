#pragma once

#include "cobent/common.hpp"

namespace cobent {

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Sum of singular values (nuclear norm), computed via SVD.
/// Singular values below 1e-13 * sigma_max are treated as zero; the
/// criterion matrices are heavily zero-padded and rank-deficient.
double trace_norm(const RealMatrix& m);

/// Euclidean norm of the entries.
double frobenius_norm(const RealMatrix& m);

/// Trace norm via an algorithmically independent route: sum of square roots
/// of the eigenvalues of M^T M (symmetric eigensolver, not SVD). Test-side
/// cross-check for trace_norm.
double trace_norm_oracle(const RealMatrix& m);

struct DensityCheck {
  bool ok = false;
  double hermiticity_residual = 0.0;  // max |M(i,j) - conj(M(j,i))|
  double trace_residual = 0.0;        // |Tr(M) - 1|
  double min_eigenvalue = 0.0;
};

/// True iff m is Hermitian within tol, has unit trace within tol, and its
/// minimum eigenvalue is >= -tol. Throws InputError on non-square input.
DensityCheck is_density_matrix(const ComplexMatrix& m, double tol = 1e-9);

}  // namespace cobent
