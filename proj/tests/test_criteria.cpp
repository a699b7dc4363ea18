#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cobent/criteria.hpp"
#include "cobent/numerics.hpp"
#include "cobent/oracle.hpp"

using namespace cobent;

namespace {

std::vector<COBasis> qubit_bases(int n) {
  return std::vector<COBasis>(n, builtin_basis("construction1-d2"));
}

DensityMatrix maximally_mixed(std::vector<int> dims) {
  DensityMatrix rho;
  rho.dims = std::move(dims);
  const int d = rho.total_dim();
  rho.matrix = ComplexMatrix::Identity(d, d) / double(d);
  return rho;
}

// tensor with distinguishable entries for layout checks
CorrelationTensor counting_tensor(std::vector<int> dims) {
  CorrelationTensor t;
  t.dims = std::move(dims);
  int size = 1;
  for (int d : t.dims) size *= d * d;
  t.basis_labels.assign(t.dims.size(), "counting");
  t.values.resize(size);
  for (int i = 0; i < size; ++i) t.values(i) = double(i + 1);
  return t;
}

}  // namespace

TEST_CASE("partition parsing") {
  const auto p = PartitionSpec::parse("12|34", 4);
  REQUIRE(p.groups.size() == 2);
  CHECK(p.groups[0] == std::vector<int>{1, 2});
  CHECK(p.groups[1] == std::vector<int>{3, 4});
  CHECK(p.to_string() == "12|34");

  const auto q = PartitionSpec::parse("3|1,2", 3);
  CHECK(q.groups[0] == std::vector<int>{3});
  CHECK(q.groups[1] == std::vector<int>{1, 2});

  CHECK_THROWS_AS(PartitionSpec::parse("12|3", 4), InputError);   // no cover
  CHECK_THROWS_AS(PartitionSpec::parse("12|24", 4), InputError);  // repeat
  CHECK_THROWS_AS(PartitionSpec::parse("|12", 2), InputError);    // empty
  CHECK_THROWS_AS(PartitionSpec::parse("15|2", 3), InputError);   // range
}

TEST_CASE("tripartite B matrix first block") {
  const auto bases = qubit_bases(3);
  const CorrelationTensor t =
      correlation_tensor(maximally_mixed({2, 2, 2}), bases);
  const RealMatrix b = b_matrix_tripartite(t, 3, 1.0, 0.0);
  REQUIRE(b.rows() == 4);
  REQUIRE(b.cols() == 32);
  CHECK((b.leftCols(16).array() - 1.0 / 64.0).abs().maxCoeff() < 1e-14);
  CHECK(b.rightCols(16).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tripartite B matrix second block layout") {
  const CorrelationTensor t = counting_tensor({2, 2, 2});
  const RealMatrix b = b_matrix_tripartite(t, 3, 0.0, 1.0);
  REQUIRE(b.rows() == 4);
  REQUIRE(b.cols() == 32);
  // row 1 carries the fourth slice of the third index in the left block,
  // row 2 the third slice; rows 3 and 4 carry slices two and one on the
  // right block; everything else is zero
  for (int a1 = 0; a1 < 4; ++a1) {
    for (int a2 = 0; a2 < 4; ++a2) {
      const int col = a1 * 4 + a2;
      CHECK(b(0, col) == t.at({a1, a2, 3}));
      CHECK(b(1, col) == t.at({a1, a2, 2}));
      CHECK(b(2, 16 + col) == t.at({a1, a2, 1}));
      CHECK(b(3, 16 + col) == t.at({a1, a2, 0}));
      CHECK(b(0, 16 + col) == 0.0);
      CHECK(b(1, 16 + col) == 0.0);
      CHECK(b(2, col) == 0.0);
      CHECK(b(3, col) == 0.0);
    }
  }
}

TEST_CASE("tripartite B matrix respects the party roles") {
  const CorrelationTensor t = counting_tensor({2, 2, 2});
  const RealMatrix b = b_matrix_tripartite(t, 1, 1.0, 0.0);
  for (int a1 = 0; a1 < 4; ++a1) {
    for (int a2 = 0; a2 < 4; ++a2) {
      for (int a3 = 0; a3 < 4; ++a3) {
        CHECK(b(a1, a2 * 4 + a3) == t.at({a1, a2, a3}));
      }
    }
  }
  CHECK_THROWS_AS(b_matrix_tripartite(counting_tensor({2, 2, 2, 2}), 1, 1, 0),
                  InputError);
  CHECK_THROWS_AS(b_matrix_tripartite(t, 4, 1, 0), InputError);
}

TEST_CASE("B matrix is linear in the coefficients") {
  const auto bases = qubit_bases(3);
  const CorrelationTensor t =
      correlation_tensor(named_state("ghz3"), bases);
  const RealMatrix b10 = b_matrix_tripartite(t, 2, 1.0, 0.0);
  const RealMatrix b01 = b_matrix_tripartite(t, 2, 0.0, 1.0);
  const RealMatrix mix = b_matrix_tripartite(t, 2, 0.7, -1.3);
  CHECK((mix - (0.7 * b10 - 1.3 * b01)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("theorem1_bounds closed forms") {
  const auto b = theorem1_bounds({2, 2, 2}, 1, 1.0, 0.0);
  CHECK(b[0] == doctest::Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(b[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  const auto c = theorem1_bounds({3, 3, 2}, 3, 0.0, 1.0);
  CHECK(c[0] == doctest::Approx(std::sqrt(1.0 / 9.0)).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));

  const auto z = theorem1_bounds({2, 3, 4}, 2, 0.0, 0.0);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
  CHECK(z[2] == 0.0);
}

TEST_CASE("theorem 1 holds on pure product states") {
  // separable under f|gh: the statistic stays below the first bound
  SamplerConfig cfg;
  cfg.seed = 101;
  cfg.count = 20;
  cfg.dims = {2, 2, 2};
  cfg.family = SampleFamily::product_pure;
  cfg.partition = PartitionSpec::parse("1|23", 3);
  const auto bases = qubit_bases(3);
  const ProductBasis pb(bases);
  const auto bounds = theorem1_bounds({2, 2, 2}, 1, 1.0, 1.0);
  for (int i = 0; i < cfg.count; ++i) {
    const CorrelationTensor t =
        correlation_tensor(sample_state(cfg, i), pb);
    CHECK(trace_norm(b_matrix_tripartite(t, 1, 1.0, 1.0)) <=
          bounds[0] + 1e-9);
  }
}

TEST_CASE("gme statistic and bounds for the three-qubit family") {
  const auto bases = qubit_bases(3);
  TripartiteCoefficients c;  // defaults: c_f1 = 1, c_f2 = 0

  const CorrelationTensor pure =
      correlation_tensor(named_state("ghz3"), bases);
  CHECK(gme_statistic(pure, c) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

  CHECK(gme_bound({2, 2, 2}, c) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(corollary1_bound(2, 1.0, 0.0) ==
        doctest::Approx((std::sqrt(1.0 / 8.0) + 2.0 * std::sqrt(0.5)) / 3.0)
            .epsilon(1e-12));
  CHECK(corollary1_bound(2, 0.0, 0.0) == 0.0);
  CHECK(corollary1_bound(3, 1.0, 0.0) ==
        doctest::Approx((std::sqrt(1.0 / 27.0) + 2.0 * std::sqrt(1.0 / 3.0)) /
                        3.0)
            .epsilon(1e-12));

  // margin of the permutation-invariant bound at the pure end
  const double margin = gme_statistic(pure, c) - corollary1_bound(2, 1.0, 0.0);
  CHECK(margin == doctest::Approx(std::sqrt(2.0) / 12.0).epsilon(1e-10));
}

TEST_CASE("maximally mixed state stays inconclusive") {
  const auto bases = qubit_bases(3);
  CriterionSpec spec;
  spec.id = CriterionId::cor1;
  const auto report =
      evaluate_criterion(maximally_mixed({2, 2, 2}), bases, spec);
  CHECK_FALSE(report.detected);
  CHECK(report.verdict() == "inconclusive");
}

TEST_CASE("mode-1 unfolding of the maximally mixed four-qubit state") {
  const auto bases = qubit_bases(4);
  const CorrelationTensor t =
      correlation_tensor(maximally_mixed({2, 2, 2, 2}), bases);
  const RealMatrix b = b_matrix_mode1(t, 1);
  REQUIRE(b.rows() == 4);
  REQUIRE(b.cols() == 64);
  CHECK((b.array() - 1.0 / 256.0).abs().maxCoeff() < 1e-15);
  CHECK(trace_norm(b) == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("mode unfolding layout") {
  const CorrelationTensor t = counting_tensor({2, 2, 2, 2});
  const RealMatrix b = b_matrix_mode1(t, 2);
  for (int a1 = 0; a1 < 4; ++a1)
    for (int a2 = 0; a2 < 4; ++a2)
      for (int a3 = 0; a3 < 4; ++a3)
        for (int a4 = 0; a4 < 4; ++a4) {
          CHECK(b(a2, (a1 * 4 + a3) * 4 + a4) == t.at({a1, a2, a3, a4}));
        }
  CHECK_THROWS_AS(b_matrix_mode1(t, 5), InputError);
}

TEST_CASE("partition matrix reproduces the printed four-qubit layout") {
  const CorrelationTensor t = counting_tensor({2, 2, 2, 2});
  const auto p = PartitionSpec::parse("12|34", 4);
  const RealMatrix b = b_matrix_partition(t, p);
  REQUIRE(b.rows() == 8);
  REQUIRE(b.cols() == 32);
  // rows: (a, alpha3) with a outermost; columns: (alpha1 alpha2, j) with the
  // last party index recovered as alpha4 = j * 2 + a (0-based)
  for (int a = 0; a < 2; ++a)
    for (int a3 = 0; a3 < 4; ++a3)
      for (int a1 = 0; a1 < 4; ++a1)
        for (int a2 = 0; a2 < 4; ++a2)
          for (int j = 0; j < 2; ++j) {
            CHECK(b(a * 4 + a3, (a1 * 4 + a2) * 2 + j) ==
                  t.at({a1, a2, a3, j * 2 + a}));
          }
  CHECK(partition_bound({2, 2, 2, 2}, p) ==
        doctest::Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("closed-form margins on the noisy GHZ families") {
  // three-qubit family, permutation-invariant bound, coefficients (1,0)
  const auto fam1 = noisy_family("ghz3", NoiseOrientation::noise_weight_x);
  const ProductBasis pb3(qubit_bases(3));
  TripartiteCoefficients c;
  const double bound1 = corollary1_bound(2, 1.0, 0.0);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const CorrelationTensor t = correlation_tensor(fam1.evaluate(x), pb3);
    const double margin = gme_statistic(t, c) - bound1;
    const double expected = std::sqrt(x * x - 2.0 * x + 2.0) / 8.0 +
                            3.0 * std::sqrt(2.0) * std::abs(x - 1.0) / 8.0 -
                            bound1;
    CHECK(margin == doctest::Approx(expected).epsilon(1e-11));
  }

  // four-qubit family: single-party unfolding and the 12|34 partition
  const auto fam3 = noisy_family("ghz4", NoiseOrientation::pure_weight_x);
  const ProductBasis pb4(qubit_bases(4));
  const auto p = PartitionSpec::parse("12|34", 4);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const CorrelationTensor t = correlation_tensor(fam3.evaluate(x), pb4);
    const double m1 = trace_norm(b_matrix_mode1(t, 1)) - 0.25;
    const double f2 = 3.0 * std::abs(x) / 8.0 +
                      std::sqrt(3.0 * x * x + 1.0) / 16.0 - 0.25;
    CHECK(m1 == doctest::Approx(f2).epsilon(1e-11));

    const double m2 =
        trace_norm(b_matrix_partition(t, p)) - std::sqrt(1.0 / 8.0);
    const double f3 = std::sqrt(x * x + 1.0) / 16.0 +
                      7.0 * std::sqrt(2.0) * std::abs(x) / 16.0 -
                      std::sqrt(1.0 / 8.0);
    CHECK(m2 == doctest::Approx(f3).epsilon(1e-11));
  }
}

TEST_CASE("evaluate_criterion verdict wiring") {
  const auto fam4 = noisy_family("w4", NoiseOrientation::pure_weight_x);
  const auto bases = qubit_bases(4);
  CriterionSpec spec;
  spec.id = CriterionId::thm4i;
  spec.partition = PartitionSpec::parse("1|234", 4);

  const auto hit = evaluate_criterion(fam4.evaluate(0.6), bases, spec);
  CHECK(hit.detected);
  CHECK(hit.margin > 0.0);

  const auto miss = evaluate_criterion(fam4.evaluate(0.4), bases, spec);
  CHECK_FALSE(miss.detected);
  CHECK(miss.margin < 0.0);

  const std::string json = hit.to_json();
  CHECK(json.find("\"criterion\": \"thm4i\"") != std::string::npos);
  CHECK(json.find("entanglement_detected") != std::string::npos);
}

TEST_CASE("thm2 single active partition convention") {
  const COBasis q3 = builtin_basis("construction2-d3");
  const COBasis q2 = builtin_basis("construction2-d2");
  const std::vector<COBasis> bases{q3, q3, q2};
  const auto fam = noisy_family("example2_phi", NoiseOrientation::pure_weight_x);

  CriterionSpec spec;
  spec.id = CriterionId::thm2;
  spec.coeffs = TripartiteCoefficients{0, 0, 0, 0, 0, 1};
  const auto report = evaluate_criterion(fam.evaluate(1.0), bases, spec);
  CHECK(report.convention == "single_active_partition");
  CHECK(report.bound == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));
  CHECK(report.statistic ==
        doctest::Approx(report.norms.at("3|12")).epsilon(1e-12));

  // bipartite variant: the first bound crosses below the statistic at the
  // pure end, so the state is detected as entangled across 3|12
  CriterionSpec bip;
  bip.id = CriterionId::thm1;
  bip.coeffs = spec.coeffs;
  bip.partition = PartitionSpec::parse("3|12", 3);
  const auto r1 = evaluate_criterion(fam.evaluate(1.0), bases, bip);
  CHECK(r1.bound == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r1.detected);
}

TEST_CASE("thm3 matches the first-party unfolding") {
  const auto bases = qubit_bases(4);
  const auto fam = noisy_family("ghz4", NoiseOrientation::pure_weight_x);
  const DensityMatrix rho = fam.evaluate(0.7);

  CriterionSpec full;
  full.id = CriterionId::thm3;
  CriterionSpec one;
  one.id = CriterionId::thm4i;
  one.partition = PartitionSpec::parse("1|234", 4);

  const auto a = evaluate_criterion(rho, bases, full);
  const auto b = evaluate_criterion(rho, bases, one);
  CHECK(a.statistic == b.statistic);
  CHECK(a.bound == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(a.detected);

  // a product state cannot cross the full-separability bound
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.count = 1;
  cfg.dims = {2, 2, 2, 2};
  cfg.family = SampleFamily::product_pure;
  cfg.partition = PartitionSpec::parse("1|2|3|4", 4);
  const auto sep = evaluate_criterion(sample_state(cfg, 0), bases, full);
  CHECK_FALSE(sep.detected);
}

TEST_CASE("competitor curves and their roots") {
  CHECK(competitor_curve("g1", 0.0) ==
        doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
  CHECK(competitor_curve("g3", 1.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(competitor_curve("g4", 0.0) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(competitor_curve("g5", 0.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(competitor_curve("g2", 0.5), InputError);
  CHECK_THROWS_AS(competitor_curve("g1", 1.5), InputError);
}
