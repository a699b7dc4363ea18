#include "cobent/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace cobent {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double trace_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<RealMatrix> svd(m);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0.0;
  const double cutoff = 1e-13 * sigma(0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) >= cutoff) sum += sigma(i);
  }
  return sum;
}

double frobenius_norm(const RealMatrix& m) { return m.norm(); }

double trace_norm_oracle(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Gram matrix on the smaller side keeps the eigenproblem compact.
  RealMatrix gram;
  if (m.rows() <= m.cols()) {
    gram = m * m.transpose();
  } else {
    gram = m.transpose() * m;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram,
                                               Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    sum += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  }
  return sum;
}

DensityCheck is_density_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw InputError("is_density_matrix: matrix must be square");
  }
  DensityCheck out;
  out.hermiticity_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  out.trace_residual = std::abs(m.trace() - Complex(1.0, 0.0));
  ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm,
                                                  Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.ok = out.hermiticity_residual <= tol && out.trace_residual <= tol &&
           out.min_eigenvalue >= -tol;
  return out;
}

}  // namespace cobent
