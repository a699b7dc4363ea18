#pragma once

#include <string>
#include <vector>

#include "cobent/cob.hpp"
#include "cobent/states.hpp"

namespace cobent {

/// Real expansion coefficients mu of a state in a tensor-product COB:
///   mu[a1,...,an] = Tr(rho A^(1)_a1 x ... x A^(n)_an),
/// stored flat with the last index fastest-varying.
struct CorrelationTensor {
  std::vector<int> dims;                 // subsystem dimensions d_i
  std::vector<std::string> basis_labels; // one per subsystem
  RealVector values;                     // length prod d_i^2

  int n_parties() const { return static_cast<int>(dims.size()); }
  // multi-index (0-based, one entry per party) to flat offset
  int offset(const std::vector<int>& alpha) const;
  double at(const std::vector<int>& alpha) const { return values[offset(alpha)]; }
};

/// Precomputed tensor-product operators for one basis assignment. Rows hold
/// vec(A_a1 x ... x A_an), so tensors and reconstructions are single
/// matrix-vector products.
class ProductBasis {
 public:
  explicit ProductBasis(std::vector<COBasis> bases);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int total_dim() const { return total_dim_; }
  int tensor_size() const { return static_cast<int>(stacked_.rows()); }

  // row a = conjugate-transposed vec of the a-th product operator
  const ComplexMatrix& stacked() const { return stacked_; }
  ComplexMatrix product_operator(int flat_index) const;

 private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
  int total_dim_ = 0;
  ComplexMatrix stacked_;
};

/// mu[a] = Tr(rho K_a). Each coefficient must be real within 1e-10
/// (imaginary residue beyond that throws IntegrityError). Dimension
/// mismatches throw InputError.
CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const ProductBasis& basis);
CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<COBasis>& bases);

/// rho = (prod d_i) sum_a mu[a] K_a; inverse of correlation_tensor.
DensityMatrix reconstruct(const CorrelationTensor& tensor,
                          const ProductBasis& basis);

/// ||T||^2 = sum mu^2 = Tr(rho^2) / prod d_i.
double vector_norm_squared(const CorrelationTensor& tensor);

/// CSV dump: one row per multi-index, 1-based labels a1,...,an, then mu.
/// Fixed 12-significant-digit formatting (byte-stable output).
std::string tensor_to_csv(const CorrelationTensor& tensor);

}  // namespace cobent
