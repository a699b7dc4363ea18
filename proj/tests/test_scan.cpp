#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cobent/scan.hpp"

using namespace cobent;

TEST_CASE("bisect_root") {
  auto root = bisect_root([](double x) { return x - 0.25; }, 0.0, 1.0, 1e-10);
  REQUIRE(root.has_value());
  CHECK(*root == doctest::Approx(0.25).epsilon(1e-9));
  CHECK_FALSE(
      bisect_root([](double x) { return x + 1.0; }, 0.0, 1.0, 1e-10));
}

TEST_CASE("three-qubit family threshold") {
  const auto cfg = example_config(1);
  const auto scan = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0],
                                   0.0, 1.0, 0.05, 1e-7);
  REQUIRE(scan.threshold.has_value());
  // analytic root of the margin: (sqrt(353) - 9) / 51
  const double expected = (std::sqrt(353.0) - 9.0) / 51.0;
  CHECK(*scan.threshold == doctest::Approx(expected).epsilon(1e-5));
  CHECK(std::abs(*scan.threshold - 0.1919) < 5e-4);
  CHECK(scan.bound ==
        doctest::Approx((std::sqrt(1.0 / 8.0) + 2.0 * std::sqrt(0.5)) / 3.0));
  // detection region sits below the root for this family
  CHECK(scan.margin.front() > 0.0);
  CHECK(scan.margin.back() < 0.0);
}

TEST_CASE("four-qubit family thresholds") {
  const auto cfg = example_config(3);
  const auto one = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0], 0.0,
                                  1.0, 0.05, 1e-7);
  REQUIRE(one.threshold.has_value());
  CHECK(*one.threshold == doctest::Approx(5.0 / 11.0).epsilon(1e-5));

  const auto two = scan_threshold(cfg.family, cfg.bases, cfg.criteria[1], 0.0,
                                  1.0, 0.05, 1e-7);
  REQUIRE(two.threshold.has_value());
  // analytic root: (112 - 2 sqrt(129)) / 194
  const double expected = (112.0 - 2.0 * std::sqrt(129.0)) / 194.0;
  CHECK(*two.threshold == doctest::Approx(expected).epsilon(1e-5));
  CHECK(std::abs(*two.threshold - 0.4602) < 5e-4);
}

TEST_CASE("w-state family threshold") {
  const auto cfg = example_config(4);
  const auto scan = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0],
                                   0.0, 1.0, 0.05, 1e-7);
  REQUIRE(scan.threshold.has_value());
  CHECK(std::abs(*scan.threshold - 0.4891) < 5e-4);
}

TEST_CASE("mixed-dimension family scans") {
  const auto cfg = example_config(2);

  // the 3|12 bipartite margin crosses its bound inside the grid
  const auto bip = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0], 0.0,
                                  1.0, 0.05, 1e-7);
  REQUIRE(bip.threshold.has_value());
  CHECK(*bip.threshold == doctest::Approx(0.69198).epsilon(2e-4));

  // the sqrt(2/9) bound equals the largest attainable statistic, so the
  // margin never turns positive anywhere on the grid
  const auto gme = scan_threshold(cfg.family, cfg.bases, cfg.criteria[1], 0.0,
                                  1.0, 0.05, 1e-7);
  CHECK_FALSE(gme.threshold.has_value());
  for (double m : gme.margin) CHECK(m < 0.0);
  CHECK(gme.bound == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("scan validates its inputs") {
  const auto cfg = example_config(1);
  CHECK_THROWS_AS(scan_threshold(cfg.family, cfg.bases, cfg.criteria[0], 0.5,
                                 0.2, 0.05, 1e-7),
                  InputError);
  CHECK_THROWS_AS(scan_threshold(cfg.family, cfg.bases, cfg.criteria[0], 0.0,
                                 1.0, 0.05, 1e-9),
                  InputError);
}

TEST_CASE("scan CSV is byte-stable with competitor columns") {
  const auto cfg = example_config(1);
  const auto scan = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0],
                                   0.0, 1.0, 0.25, 1e-6, {"g1"});
  const auto again = scan_threshold(cfg.family, cfg.bases, cfg.criteria[0],
                                    0.0, 1.0, 0.25, 1e-6, {"g1"});
  CHECK(scan.to_csv() == again.to_csv());

  std::istringstream in(scan.to_csv());
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,statistic,bound,margin,g1");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);

  const std::string json = scan.to_json();
  CHECK(json.find("\"threshold\"") != std::string::npos);
}

TEST_CASE("competitor curve roots") {
  const double g1 =
      *bisect_root([](double x) { return competitor_curve("g1", x); }, 0.0,
                   1.0, 1e-9);
  CHECK(std::abs(g1 - (2.0 - std::sqrt(3.0)) / 2.0) < 1e-8);
  CHECK(std::abs(g1 - 0.134) < 1e-3);

  const double g3 =
      *bisect_root([](double x) { return competitor_curve("g3", x); }, 0.0,
                   1.0, 1e-9);
  CHECK(std::abs(g3 - 2.0 / 3.0) < 1e-8);

  const double g5 =
      *bisect_root([](double x) { return competitor_curve("g5", x); }, 0.0,
                   1.0, 1e-9);
  CHECK(std::abs(g5 - 0.783) < 1e-3);
}

TEST_CASE("example configurations are pinned") {
  const auto one = example_config(1);
  CHECK(one.bases.size() == 3);
  CHECK(one.bases[0].label == "construction1-d2");
  CHECK(one.reference_thresholds == std::vector<double>{0.1919});

  const auto two = example_config(2);
  CHECK(two.bases[0].label == "construction2-d3");
  CHECK(two.bases[2].label == "construction2-d2");
  CHECK_FALSE(two.note.empty());

  CHECK_THROWS_AS(example_config(5), InputError);
}
