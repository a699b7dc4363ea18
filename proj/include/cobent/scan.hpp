#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cobent/oracle.hpp"

namespace cobent {

/// Margin of a criterion over a noise-parameter grid, with the sign-change
/// threshold located by bisection. The bound is independent of x.
struct ScanResult {
  std::string parameter = "x";
  std::vector<double> grid;
  std::vector<double> statistic;
  std::vector<double> margin;
  double bound = 0.0;
  std::optional<double> threshold;      // absent if the margin never changes sign
  double threshold_tolerance = 0.0;     // achieved bisection half-width
  std::vector<std::string> competitor_names;
  std::vector<std::vector<double>> competitor_values;  // one column per name

  std::string to_csv() const;   // columns: x, statistic, bound, margin, g...
  std::string to_json() const;
};

/// Evaluates the criterion margin on [lo, hi] with the given step and
/// bisects the first sign change down to tol. Throws InputError on empty or
/// non-increasing grids or tol < 1e-8.
ScanResult scan_threshold(const NoisyStateFamily& family,
                          const std::vector<COBasis>& bases,
                          const CriterionSpec& spec, double lo, double hi,
                          double step, double tol,
                          const std::vector<std::string>& competitors = {});

/// Root of a scalar function on [lo, hi] by bisection (used for the
/// competitor curves); returns nullopt without a sign change.
std::optional<double> bisect_root(const std::function<double(double)>& fn,
                                  double lo, double hi, double tol);

/// Pinned configuration reproducing one of the bundled examples (1-4).
struct ExampleConfig {
  int id = 0;
  NoisyStateFamily family;
  std::vector<COBasis> bases;
  std::vector<CriterionSpec> criteria;          // one scan per entry
  std::vector<double> reference_thresholds;     // aligned with criteria
  std::vector<std::string> row_labels;
  std::string note;
};
ExampleConfig example_config(int id);

}  // namespace cobent
