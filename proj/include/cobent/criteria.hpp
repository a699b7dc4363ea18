#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobent/correlations.hpp"

namespace cobent {

/// Ordered grouping of party labels (1-based), e.g. {{3},{1,2}} or
/// {{1,2},{3,4}}. Groups must be nonempty, disjoint, and cover 1..n.
struct PartitionSpec {
  int n = 0;
  std::vector<std::vector<int>> groups;

  /// Parses "12|34" or "3|1,2" style text. Labels are single digits or
  /// comma-separated integers; groups are separated by '|'.
  static PartitionSpec parse(const std::string& text, int n_parties);
  std::string to_string() const;
  void validate() const;  // throws InputError on malformed partitions
  std::vector<int> flattened() const;
};

/// Weights (c_f1, c_f2) of the two building blocks of B^{f|gh}, per party f.
struct TripartiteCoefficients {
  double c11 = 1, c12 = 0;
  double c21 = 1, c22 = 0;
  double c31 = 1, c32 = 0;

  std::array<double, 2> for_party(int f) const;
  bool is_zero(int f) const;
};

/// The d_f^2 x (d_f d_g^2 d_h^2) tripartite criterion matrix
/// B^{f|gh} = c_f1 B1 + c_f2 B2 for f in {1,2,3}, g < h the other labels:
///   B1(a_f, (a_g-1) d_h^2 + a_h) = mu_{..}, remaining columns zero;
///   B2 rows split into d_f groups of d_f; row r sits in column block
///   ceil(r/d_f) and carries mu with a_f = d_f^2 - r + 1.
RealMatrix b_matrix_tripartite(const CorrelationTensor& t, int f, double cf1,
                               double cf2);

/// Right-hand sides bounding ||B^{f|gh}||_tr for pure states separable under
/// (i) f|gh, (ii) g|fh, (iii) h|fg. By convexity the bounds extend to mixed
/// states separable under the same bipartition.
std::array<double, 3> theorem1_bounds(const std::vector<int>& dims, int f,
                                      double cf1, double cf2);

/// B(rho) = mean of the three bipartition trace norms.
double gme_statistic(const CorrelationTensor& t,
                     const TripartiteCoefficients& c);

/// Biseparability bound (Q1 + Q2 + Q3)/3, each Q_f the maximum of the three
/// theorem1_bounds for that f. B(rho) above this value certifies genuine
/// tripartite entanglement.
double gme_bound(const std::vector<int>& dims,
                 const TripartiteCoefficients& c);
double q_value(const std::vector<int>& dims, int f, double cf1, double cf2);

/// Biseparability bound for permutation-invariant states with equal local
/// dimension d and coefficients (c11, c12) shared by all parties:
///   (1/3) (c11 sqrt(1/d^3) + c12/d + 2 c11 sqrt(1/d) + 2 c12 sqrt(1/d)).
/// Evaluated as printed; intended for c11, c12 >= 0.
double corollary1_bound(int d, double c11, double c12);

/// Mode-l1 unfolding: rows a_{l1}, columns the remaining labels in ascending
/// order with the last one fastest. Bounds sqrt(1/prod d_i) for fully
/// separable states and for states separable across l1|rest.
RealMatrix b_matrix_mode1(const CorrelationTensor& t, int l1);

/// k-partition criterion matrix. With G_k the last group and l_n its last
/// label: rows are (a, alpha over G_k minus l_n) with a in 1..d_{l_n} outer;
/// columns are (alpha over all labels outside G_k in group order, j) with
/// j in 1..d_{l_n} innermost; the entry takes a_{l_n} = (j-1) d_{l_n} + a.
/// Separable states obey ||.||_tr <= sqrt(1/prod_{labels except l_n} d).
RealMatrix b_matrix_partition(const CorrelationTensor& t,
                              const PartitionSpec& p);
double partition_bound(const std::vector<int>& dims, const PartitionSpec& p);

enum class CriterionId { thm1, thm2, cor1, thm3, thm4i, thm4ii };
CriterionId criterion_from_string(const std::string& name);
std::string criterion_to_string(CriterionId id);

struct CriterionSpec {
  CriterionId id = CriterionId::thm2;
  TripartiteCoefficients coeffs;          // thm1 / thm2 / cor1
  std::optional<PartitionSpec> partition; // thm1 f|gh, thm4i l1|rest, thm4ii
};

struct CriterionReport {
  std::string criterion;
  std::vector<int> dims;
  std::vector<std::string> basis_labels;
  std::vector<double> coefficients;      // c11..c32 where relevant
  std::map<std::string, double> norms;   // per-bipartition trace norms
  std::vector<double> bounds;            // all bound values computed
  double statistic = 0.0;
  double bound = 0.0;                    // the bound the verdict compares to
  double margin = 0.0;                   // statistic - bound
  bool detected = false;
  bool borderline = false;               // |margin| <= 1e-9
  std::string convention;                // e.g. "single_active_partition"

  std::string verdict() const {
    return detected ? "entanglement_detected" : "inconclusive";
  }
  std::string to_json() const;
};

/// Strict verdicts: detected iff margin > 0; margins within +-1e-9 are
/// reported inconclusive with the borderline flag set.
CriterionReport evaluate_criterion(const CorrelationTensor& t,
                                   const CriterionSpec& spec);
CriterionReport evaluate_criterion(const DensityMatrix& rho,
                                   const std::vector<COBasis>& bases,
                                   const CriterionSpec& spec);

/// Comparison curves used by the example scans: g1, g3, g4, g5.
double competitor_curve(const std::string& name, double x);
std::vector<std::string> competitor_names();

}  // namespace cobent
