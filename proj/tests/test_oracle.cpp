#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cobent/numerics.hpp"
#include "cobent/oracle.hpp"

using namespace cobent;

namespace {

std::vector<COBasis> qubit_bases(int n) {
  return std::vector<COBasis>(n, builtin_basis("construction1-d2"));
}

}  // namespace

TEST_CASE("haar samples are reproducible pure density matrices") {
  SamplerConfig cfg;
  cfg.seed = 4;
  cfg.count = 5;
  cfg.dims = {2, 2};
  cfg.family = SampleFamily::haar_pure;
  for (int i = 0; i < cfg.count; ++i) {
    const DensityMatrix rho = sample_state(cfg, i);
    CHECK(is_density_matrix(rho.matrix).ok);
    CHECK((rho.matrix * rho.matrix).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix again = sample_state(cfg, i);
    CHECK((rho.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);
  }
  const DensityMatrix a = sample_state(cfg, 0);
  const DensityMatrix b = sample_state(cfg, 1);
  CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("mixture samples are density matrices") {
  SamplerConfig cfg;
  cfg.seed = 9;
  cfg.count = 20;
  cfg.dims = {2, 2, 2};
  cfg.family = SampleFamily::mixed_convex;
  for (int i = 0; i < cfg.count; ++i) {
    CHECK(is_density_matrix(sample_state(cfg, i).matrix).ok);
  }
}

TEST_CASE("single-term mixtures reduce to pure states") {
  SamplerConfig cfg;
  cfg.seed = 21;
  cfg.count = 10;
  cfg.dims = {2, 2};
  cfg.family = SampleFamily::mixed_convex;
  cfg.max_terms = 1;
  for (int i = 0; i < cfg.count; ++i) {
    const DensityMatrix rho = sample_state(cfg, i);
    CHECK((rho.matrix * rho.matrix).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product samples factor across the partition") {
  SamplerConfig cfg;
  cfg.seed = 8;
  cfg.count = 10;
  cfg.dims = {2, 2, 2};
  cfg.family = SampleFamily::product_pure;
  cfg.partition = PartitionSpec::parse("2|13", 3);
  for (int i = 0; i < cfg.count; ++i) {
    const DensityMatrix rho = sample_state(cfg, i);
    CHECK(is_density_matrix(rho.matrix).ok);
    CHECK((rho.matrix * rho.matrix).trace().real() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sampler configuration errors") {
  SamplerConfig cfg;
  cfg.dims = {2, 2};
  cfg.family = SampleFamily::product_pure;
  CHECK_THROWS_AS(cfg.validate(), InputError);  // missing partition
  cfg.partition = PartitionSpec::parse("1|2", 2);
  cfg.count = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.count = 1;
  cfg.family = SampleFamily::biseparable_mixture;
  cfg.partition = PartitionSpec::parse("1|2", 2);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("party permutation moves amplitudes consistently") {
  // |011> permuted by a cyclic shift
  ComplexVector v = ComplexVector::Zero(8);
  v(3) = 1.0;  // binary 011
  const DensityMatrix rho = pure_state(v, {2, 2, 2});
  const DensityMatrix rolled = permute_parties(rho, {2, 0, 1});
  // party order (3,1,2): digits (1,0,1) -> flat 5
  CHECK(rolled.matrix(5, 5).real() == doctest::Approx(1.0));

  const DensityMatrix sym = symmetrize_parties(rho);
  CHECK(is_density_matrix(sym.matrix).ok);
  // two |1>s among three qubits: diagonal support on {011,101,110}
  CHECK(sym.matrix(3, 3).real() == doctest::Approx(1.0 / 3.0));
  CHECK(sym.matrix(5, 5).real() == doctest::Approx(1.0 / 3.0));
  CHECK(sym.matrix(6, 6).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("verify_bound_suite flags nothing on separable inputs") {
  SamplerConfig cfg;
  cfg.seed = 12;
  cfg.count = 50;
  cfg.dims = {2, 2, 2};
  cfg.family = SampleFamily::biseparable_mixture;
  cfg.partition = PartitionSpec::parse("1|23", 3);

  CriterionSpec spec;
  spec.id = CriterionId::thm1;
  spec.partition = cfg.partition;

  const auto report = verify_bound_suite(cfg, qubit_bases(3), spec);
  CHECK(report.positive_count == 0);
  CHECK(report.max_margin <= 1e-9);
  CHECK(report.violating_indices.empty());
  CHECK(report.to_json().find("\"criterion\": \"thm1\"") != std::string::npos);
}

TEST_CASE("verify_bound_suite reports expected violations on entangled input") {
  // a pure GHZ state is not biseparable, so the gme bound must be crossed
  SamplerConfig cfg;
  cfg.seed = 1;
  cfg.count = 1;
  cfg.dims = {2, 2, 2};
  cfg.family = SampleFamily::haar_pure;

  CriterionSpec spec;
  spec.id = CriterionId::cor1;

  // evaluate directly on the GHZ state instead of a random sample
  const auto bases = qubit_bases(3);
  const auto report = evaluate_criterion(named_state("ghz3"), bases, spec);
  CHECK(report.detected);
  CHECK(report.margin > 0.1);
}
