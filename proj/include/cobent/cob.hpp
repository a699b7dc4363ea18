#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobent/common.hpp"

namespace cobent {

/// A complete orthogonal basis for one d-dimensional subsystem:
/// d^2 Hermitian operators A_a with Tr(A_a A_b) = delta_ab / d and
/// sum_a A_a = I. Every operator then has trace 1/d.
struct COBasis {
  int dim = 0;
  std::string label;
  std::vector<ComplexMatrix> operators;  // d^2 operators, each d x d
};

struct CobValidation {
  double orthogonality_residual = 0.0;  // max |Tr(A_a A_b) - delta/d|
  int worst_alpha = 0;                  // 1-based pair realizing the max
  int worst_beta = 0;
  double completeness_residual = 0.0;   // ||sum A - I||_F
  double hermiticity_residual = 0.0;    // max over operators
  double trace_residual = 0.0;          // max |Tr(A_a) - 1/d|
  bool passed(double tol) const {
    return orthogonality_residual <= tol && completeness_residual <= tol &&
           hermiticity_residual <= tol;
  }
};

/// Measures the COB defining relations. Throws InputError unless the input
/// is exactly d^2 square operators of a common dimension d.
CobValidation validate_cob(const std::vector<ComplexMatrix>& ops);

/// Built-in bases, stored exactly as printed (symbolic constants evaluated
/// in double precision). Names: construction1-d2, construction2-d2,
/// construction2-d3. Validation runs at load; a failure throws
/// ValidationError naming the offending pair and residual.
COBasis builtin_basis(const std::string& name);
std::vector<std::string> builtin_basis_names();

/// Seeded general-d construction: an orthonormal Hermitian operator basis
/// {I/sqrt(d), traceless B_j} is mixed by a random orthogonal matrix whose
/// first column is the constant vector (1/d, ..., 1/d). Deterministic for a
/// fixed seed. Throws InputError for d < 2.
COBasis generate_cob(int dim, std::uint64_t seed);

/// General symmetric informationally complete measurement derived from a
/// COB: P_a = lambda A_a + (1 - lambda) I / d^2.
struct GSICM {
  int dim = 0;
  double mixing_parameter = 0.0;  // lambda
  double purity_parameter = 0.0;  // a = Tr(P_a^2), constant over a
  std::vector<ComplexMatrix> operators;
};

/// Requires 0 < lambda <= 1/sqrt(d+1) and positivity of every P_a
/// (min eigenvalue >= -1e-10); otherwise throws InputError.
GSICM gsicm_from_cob(const COBasis& basis, double lambda);

/// Converts GSICM outcome probabilities p_a = Tr(rho P_a) into COB
/// coefficients mu_a = Tr(rho A_a):
///   mu_a = lambda (d^2-1)/(a d^3 - 1) p_a + 1/d^2
///          - lambda (d^2-1)/(d^2 (a d^3 - 1)).
/// p must have d^2 entries summing to 1 within 1e-10.
std::vector<double> probabilities_bridge(const std::vector<double>& p,
                                         double a, double lambda, int d);

/// JSON basis file: {"dim": d, "label": "...", "operators": [...]} with
/// complex entries as [re, im]. Validation runs on load.
COBasis load_basis(const std::string& path);
void save_basis(const COBasis& basis, const std::string& path);

}  // namespace cobent
