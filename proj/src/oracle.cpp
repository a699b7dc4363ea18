#include "cobent/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cobent/numerics.hpp"
#include "rng.hpp"

namespace cobent {

namespace {

using json = nlohmann::json;

ComplexVector haar_vector(int dim, detail::Gaussian& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return v;
}

ComplexMatrix haar_projector(int dim, detail::Gaussian& rng) {
  const ComplexVector v = haar_vector(dim, rng);
  return v * v.adjoint();
}

std::vector<double> convex_weights(int terms, detail::Gaussian& rng) {
  std::vector<double> w(terms);
  double sum = 0.0;
  for (int i = 0; i < terms; ++i) {
    w[i] = std::exp(rng.normal());
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

int draw_terms(int max_terms, detail::Gaussian& rng) {
  return 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(max_terms));
}

// One pure product term across the partition groups, parties back in
// ascending order.
DensityMatrix product_term(const std::vector<int>& dims,
                           const PartitionSpec& partition,
                           detail::Gaussian& rng) {
  ComplexMatrix m(1, 1);
  m(0, 0) = 1.0;
  std::vector<int> order;
  std::vector<int> order_dims;
  for (const auto& group : partition.groups) {
    int gdim = 1;
    for (int l : group) gdim *= dims[l - 1];
    m = kron(m, haar_projector(gdim, rng));
    for (int l : group) {
      order.push_back(l);
      order_dims.push_back(dims[l - 1]);
    }
  }
  DensityMatrix grouped;
  grouped.dims = order_dims;
  grouped.matrix = std::move(m);

  // perm[i] = position (within `order`) of the party that belongs at slot i
  std::vector<int> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    perm[i] = static_cast<int>(
        std::find(order.begin(), order.end(), static_cast<int>(i) + 1) -
        order.begin());
  }
  return permute_parties(grouped, perm);
}

}  // namespace

SampleFamily sample_family_from_string(const std::string& name) {
  if (name == "haar_pure") return SampleFamily::haar_pure;
  if (name == "mixed_convex") return SampleFamily::mixed_convex;
  if (name == "product_pure") return SampleFamily::product_pure;
  if (name == "biseparable_mixture") return SampleFamily::biseparable_mixture;
  if (name == "k_separable_mixture") return SampleFamily::k_separable_mixture;
  throw InputError("unknown sample family: " + name);
}

namespace {

std::string family_to_string(SampleFamily f) {
  switch (f) {
    case SampleFamily::haar_pure: return "haar_pure";
    case SampleFamily::mixed_convex: return "mixed_convex";
    case SampleFamily::product_pure: return "product_pure";
    case SampleFamily::biseparable_mixture: return "biseparable_mixture";
    case SampleFamily::k_separable_mixture: return "k_separable_mixture";
  }
  return "?";
}

}  // namespace

void SamplerConfig::validate() const {
  if (count < 1) throw InputError("sampler count must be >= 1");
  if (dims.empty()) throw InputError("sampler needs dimensions");
  const bool needs_partition = family == SampleFamily::product_pure ||
                               family == SampleFamily::biseparable_mixture ||
                               family == SampleFamily::k_separable_mixture;
  if (needs_partition) {
    if (!partition) {
      throw InputError("family " + family_to_string(family) +
                       " requires a partition");
    }
    partition->validate();
    if (family == SampleFamily::biseparable_mixture &&
        partition->groups.size() != 2) {
      throw InputError("biseparable_mixture needs exactly two groups");
    }
    if (partition->n != static_cast<int>(dims.size())) {
      throw InputError("partition arity does not match dims");
    }
  }
  if (max_terms < 1) throw InputError("max_terms must be >= 1");
}

DensityMatrix sample_state(const SamplerConfig& cfg, int index) {
  cfg.validate();
  if (index < 0 || index >= cfg.count) {
    throw InputError("sample index outside the configured count");
  }
  detail::Gaussian rng(detail::mix_seed(cfg.seed, index));
  int total = 1;
  for (int d : cfg.dims) total *= d;

  DensityMatrix out;
  out.dims = cfg.dims;
  switch (cfg.family) {
    case SampleFamily::haar_pure:
      out.matrix = haar_projector(total, rng);
      break;
    case SampleFamily::mixed_convex: {
      const int terms = draw_terms(cfg.max_terms, rng);
      const auto w = convex_weights(terms, rng);
      out.matrix = ComplexMatrix::Zero(total, total);
      for (int k = 0; k < terms; ++k) {
        out.matrix += w[k] * haar_projector(total, rng);
      }
      break;
    }
    case SampleFamily::product_pure:
      out = product_term(cfg.dims, *cfg.partition, rng);
      break;
    case SampleFamily::biseparable_mixture:
    case SampleFamily::k_separable_mixture: {
      const int terms = draw_terms(cfg.max_terms, rng);
      const auto w = convex_weights(terms, rng);
      out.matrix = ComplexMatrix::Zero(total, total);
      for (int k = 0; k < terms; ++k) {
        out.matrix += w[k] * product_term(cfg.dims, *cfg.partition, rng).matrix;
      }
      break;
    }
  }
  return out;
}

DensityMatrix permute_parties(const DensityMatrix& rho,
                              const std::vector<int>& perm) {
  const int n = static_cast<int>(rho.dims.size());
  if (static_cast<int>(perm.size()) != n) {
    throw InputError("permutation arity mismatch");
  }
  std::vector<int> new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = rho.dims[perm[i]];

  const int total = rho.total_dim();
  // flat index map: old index -> new index
  std::vector<int> map(total);
  std::vector<int> digits(n);
  for (int old = 0; old < total; ++old) {
    int rem = old;
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = rem % rho.dims[s];
      rem /= rho.dims[s];
    }
    int idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * new_dims[i] + digits[perm[i]];
    map[old] = idx;
  }

  DensityMatrix out;
  out.dims = std::move(new_dims);
  out.matrix.resize(total, total);
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      out.matrix(map[r], map[c]) = rho.matrix(r, c);
    }
  }
  return out;
}

DensityMatrix symmetrize_parties(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.dims.size());
  for (int d : rho.dims) {
    if (d != rho.dims[0]) {
      throw InputError("symmetrization requires equal local dimensions");
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  DensityMatrix out;
  out.dims = rho.dims;
  out.matrix = ComplexMatrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  int count = 0;
  do {
    out.matrix += permute_parties(rho, perm).matrix;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.matrix /= double(count);
  return out;
}

ViolationReport verify_bound_suite(const SamplerConfig& cfg,
                                   const std::vector<COBasis>& bases,
                                   const CriterionSpec& spec) {
  cfg.validate();
  const ProductBasis product(bases);
  ViolationReport report;
  report.seed = cfg.seed;
  report.count = cfg.count;
  report.family = family_to_string(cfg.family);
  report.criterion = criterion_to_string(spec.id);
  report.max_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.count; ++i) {
    const DensityMatrix rho = sample_state(cfg, i);
    const CorrelationTensor t = correlation_tensor(rho, product);
    const CriterionReport r = evaluate_criterion(t, spec);
    if (r.margin > report.max_margin) report.max_margin = r.margin;
    if (r.margin > 1e-9) {
      ++report.positive_count;
      report.violating_indices.push_back(i);
    }
  }
  return report;
}

std::string ViolationReport::to_json() const {
  json doc;
  doc["seed"] = seed;
  doc["count"] = count;
  doc["family"] = family;
  doc["criterion"] = criterion;
  doc["max_margin"] = max_margin;
  doc["positive_count"] = positive_count;
  doc["violating_indices"] = violating_indices;
  return doc.dump(2);
}

}  // namespace cobent
