#include "cobent/correlations.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cobent/numerics.hpp"

namespace cobent {

int CorrelationTensor::offset(const std::vector<int>& alpha) const {
  if (alpha.size() != dims.size()) {
    throw InputError("tensor index arity mismatch");
  }
  int off = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int span = dims[i] * dims[i];
    if (alpha[i] < 0 || alpha[i] >= span) {
      throw InputError("tensor index out of range");
    }
    off = off * span + alpha[i];
  }
  return off;
}

ProductBasis::ProductBasis(std::vector<COBasis> bases) {
  if (bases.empty()) throw InputError("ProductBasis: no bases given");
  int tensor_size = 1;
  total_dim_ = 1;
  for (const auto& b : bases) {
    if (b.dim < 2 || static_cast<int>(b.operators.size()) != b.dim * b.dim) {
      throw InputError("ProductBasis: malformed basis " + b.label);
    }
    dims_.push_back(b.dim);
    labels_.push_back(b.label);
    tensor_size *= b.dim * b.dim;
    total_dim_ *= b.dim;
  }

  stacked_.resize(tensor_size, total_dim_ * total_dim_);
  std::vector<int> alpha(bases.size(), 0);
  for (int flat = 0; flat < tensor_size; ++flat) {
    ComplexMatrix k = bases[0].operators[alpha[0]];
    for (std::size_t s = 1; s < bases.size(); ++s) {
      k = kron(k, bases[s].operators[alpha[s]]);
    }
    // row = vec(K^T), so that stacked * vec(rho) yields Tr(rho K)
    ComplexMatrix kt = k.transpose();
    stacked_.row(flat) = Eigen::Map<ComplexVector>(kt.data(), kt.size());

    for (int s = static_cast<int>(bases.size()) - 1; s >= 0; --s) {
      if (++alpha[s] < dims_[s] * dims_[s]) break;
      alpha[s] = 0;
    }
  }
}

ComplexMatrix ProductBasis::product_operator(int flat_index) const {
  ComplexVector row = stacked_.row(flat_index);
  Eigen::Map<ComplexMatrix> kt(row.data(), total_dim_, total_dim_);
  return kt.transpose();
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const ProductBasis& basis) {
  if (rho.dims != basis.dims()) {
    throw InputError("correlation_tensor: state and basis dimensions differ");
  }
  const ComplexMatrix& m = rho.matrix;
  Eigen::Map<const ComplexVector> vec_rho(m.data(), m.size());
  ComplexVector raw = basis.stacked() * vec_rho;

  double worst = 0.0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    worst = std::max(worst, std::abs(raw(i).imag()));
  }
  if (worst > 1e-10) {
    throw IntegrityError(
        "correlation coefficients carry imaginary residue " +
        std::to_string(worst) + "; basis or state is corrupted");
  }

  CorrelationTensor t;
  t.dims = basis.dims();
  t.basis_labels = basis.labels();
  t.values = raw.real();
  return t;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<COBasis>& bases) {
  return correlation_tensor(rho, ProductBasis(bases));
}

DensityMatrix reconstruct(const CorrelationTensor& tensor,
                          const ProductBasis& basis) {
  if (tensor.dims != basis.dims()) {
    throw InputError("reconstruct: tensor and basis dimensions differ");
  }
  double scale = 1.0;
  for (int d : tensor.dims) scale *= d;

  // rho = scale * sum_a mu_a K_a; rows of stacked are vec(K^T), so the
  // matrix with vec(rho^T) = stacked^T mu reads back row-major.
  ComplexVector vec = basis.stacked().transpose() * tensor.values.cast<Complex>();
  const int dim = basis.total_dim();
  DensityMatrix out;
  out.dims = tensor.dims;
  out.matrix =
      scale * Eigen::Map<ComplexMatrix>(vec.data(), dim, dim).transpose();
  return out;
}

double vector_norm_squared(const CorrelationTensor& tensor) {
  return tensor.values.squaredNorm();
}

std::string tensor_to_csv(const CorrelationTensor& tensor) {
  std::ostringstream out;
  const int n = tensor.n_parties();
  for (int s = 0; s < n; ++s) out << "alpha" << (s + 1) << ",";
  out << "mu\n";
  std::vector<int> alpha(n, 0);
  char buf[40];
  for (Eigen::Index flat = 0; flat < tensor.values.size(); ++flat) {
    for (int s = 0; s < n; ++s) out << (alpha[s] + 1) << ",";
    std::snprintf(buf, sizeof buf, "%.12g", tensor.values(flat));
    out << buf << "\n";
    for (int s = n - 1; s >= 0; --s) {
      if (++alpha[s] < tensor.dims[s] * tensor.dims[s]) break;
      alpha[s] = 0;
    }
  }
  return out.str();
}

}  // namespace cobent
