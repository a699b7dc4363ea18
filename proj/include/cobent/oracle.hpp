#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cobent/criteria.hpp"

namespace cobent {

enum class SampleFamily {
  haar_pure,            // Haar-random pure state on the full space
  mixed_convex,         // convex mixture of <= max_terms Haar pures
  product_pure,         // independent Haar factor per partition group
  biseparable_mixture,  // mixture of product_pure terms under one partition
  k_separable_mixture,  // mixture of per-group pure products
};

SampleFamily sample_family_from_string(const std::string& name);

struct SamplerConfig {
  std::uint64_t seed = 0;
  int count = 1;
  std::vector<int> dims;
  SampleFamily family = SampleFamily::haar_pure;
  std::optional<PartitionSpec> partition;  // required for product/separable
  int max_terms = 8;

  void validate() const;  // throws InputError on bad combinations
};

/// Deterministic sampling: the state for (seed, index) is bit-identical
/// across runs (own Box-Muller transform over a fixed mt19937_64 stream).
DensityMatrix sample_state(const SamplerConfig& cfg, int index);

/// Reorders subsystems: party perm[i] (0-based) moves to position i.
DensityMatrix permute_parties(const DensityMatrix& rho,
                              const std::vector<int>& perm);

/// Averages over all party permutations; requires equal dimensions.
DensityMatrix symmetrize_parties(const DensityMatrix& rho);

struct ViolationReport {
  std::uint64_t seed = 0;
  int count = 0;
  std::string family;
  std::string criterion;
  double max_margin = 0.0;  // max over samples of statistic - bound
  int positive_count = 0;   // samples with margin > 1e-9
  std::vector<int> violating_indices;

  std::string to_json() const;
};

/// Runs evaluate_criterion over every sample of cfg. For soundness the
/// sampled class must match the criterion's separability class; then
/// max_margin <= 1e-9 is expected.
ViolationReport verify_bound_suite(const SamplerConfig& cfg,
                                   const std::vector<COBasis>& bases,
                                   const CriterionSpec& spec);

}  // namespace cobent
