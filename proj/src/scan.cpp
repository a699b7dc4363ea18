#include "cobent/scan.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace cobent {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::optional<double> bisect_root(const std::function<double(double)>& fn,
                                  double lo, double hi, double tol) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ScanResult scan_threshold(const NoisyStateFamily& family,
                          const std::vector<COBasis>& bases,
                          const CriterionSpec& spec, double lo, double hi,
                          double step, double tol,
                          const std::vector<std::string>& competitors) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    throw InputError("scan grid must be increasing and inside [0, 1]");
  }
  if (!(step > 0.0)) throw InputError("scan step must be positive");
  if (!(tol >= 1e-8)) throw InputError("scan tolerance must be >= 1e-8");

  const ProductBasis product(bases);
  auto margin_at = [&](double x) {
    const CorrelationTensor t =
        correlation_tensor(family.evaluate(x), product);
    return evaluate_criterion(t, spec);
  };

  ScanResult out;
  for (double x = lo; x <= hi + 0.5 * step; x += step) {
    const double clamped = std::min(x, hi);
    const CriterionReport r = margin_at(clamped);
    out.grid.push_back(clamped);
    out.statistic.push_back(r.statistic);
    out.margin.push_back(r.margin);
    out.bound = r.bound;
    if (clamped >= hi) break;
  }

  for (std::size_t i = 0; i + 1 < out.grid.size(); ++i) {
    const double a = out.margin[i];
    const double b = out.margin[i + 1];
    if (a == 0.0) {
      out.threshold = out.grid[i];
      out.threshold_tolerance = 0.0;
      break;
    }
    if ((a > 0.0) != (b > 0.0)) {
      auto root = bisect_root(
          [&](double x) { return margin_at(x).margin; }, out.grid[i],
          out.grid[i + 1], tol);
      if (root) {
        out.threshold = *root;
        out.threshold_tolerance = 0.5 * tol;
      }
      break;
    }
  }

  out.competitor_names = competitors;
  for (const auto& name : competitors) {
    std::vector<double> column;
    column.reserve(out.grid.size());
    for (double x : out.grid) column.push_back(competitor_curve(name, x));
    out.competitor_values.push_back(std::move(column));
  }
  return out;
}

std::string ScanResult::to_csv() const {
  std::ostringstream csv;
  csv << parameter << ",statistic,bound,margin";
  for (const auto& name : competitor_names) csv << "," << name;
  csv << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << fmt(grid[i]) << "," << fmt(statistic[i]) << "," << fmt(bound)
        << "," << fmt(margin[i]);
    for (const auto& column : competitor_values) csv << "," << fmt(column[i]);
    csv << "\n";
  }
  return csv.str();
}

std::string ScanResult::to_json() const {
  json doc;
  doc["parameter"] = parameter;
  doc["grid"] = grid;
  doc["statistic"] = statistic;
  doc["bound"] = bound;
  doc["margin"] = margin;
  if (threshold) {
    doc["threshold"] = *threshold;
    doc["threshold_tolerance"] = threshold_tolerance;
  } else {
    doc["threshold"] = nullptr;
  }
  if (!competitor_names.empty()) {
    doc["competitors"] = json::object();
    for (std::size_t i = 0; i < competitor_names.size(); ++i) {
      doc["competitors"][competitor_names[i]] = competitor_values[i];
    }
  }
  return doc.dump(2);
}

ExampleConfig example_config(int id) {
  ExampleConfig cfg;
  cfg.id = id;
  switch (id) {
    case 1: {
      cfg.family = noisy_family("ghz3", NoiseOrientation::noise_weight_x);
      const COBasis b = builtin_basis("construction1-d2");
      cfg.bases = {b, b, b};
      CriterionSpec spec;
      spec.id = CriterionId::cor1;
      spec.coeffs = TripartiteCoefficients{};  // c_f1 = 1, c_f2 = 0
      cfg.criteria = {spec};
      cfg.reference_thresholds = {0.1919};
      cfg.row_labels = {"cor1 c=(1,0)"};
      break;
    }
    case 2: {
      cfg.family =
          noisy_family("example2_phi", NoiseOrientation::pure_weight_x);
      const COBasis q3 = builtin_basis("construction2-d3");
      const COBasis q2 = builtin_basis("construction2-d2");
      cfg.bases = {q3, q3, q2};
      TripartiteCoefficients c;
      c.c11 = c.c21 = c.c31 = 0.0;
      c.c12 = c.c22 = 0.0;
      c.c32 = 1.0;
      CriterionSpec bip;
      bip.id = CriterionId::thm1;
      bip.coeffs = c;
      bip.partition = PartitionSpec::parse("3|12", 3);
      CriterionSpec gme;
      gme.id = CriterionId::thm2;
      gme.coeffs = c;
      cfg.criteria = {bip, gme};
      cfg.reference_thresholds = {0.496, 0.7152};
      cfg.row_labels = {"thm1(i) c3=(0,1)", "thm2 c32=1 (single partition)"};
      cfg.note =
          "The thm2 row compares ||B^{3|12}|| against sqrt(2/9); with "
          "c31 = 0 that bound equals the largest value the statistic can "
          "take on any state, so no threshold below 1 exists and the "
          "reference values are not reproduced by these criteria.";
      break;
    }
    case 3: {
      cfg.family = noisy_family("ghz4", NoiseOrientation::pure_weight_x);
      const COBasis b = builtin_basis("construction1-d2");
      cfg.bases = {b, b, b, b};
      CriterionSpec one;
      one.id = CriterionId::thm4i;
      one.partition = PartitionSpec::parse("1|234", 4);
      CriterionSpec two;
      two.id = CriterionId::thm4ii;
      two.partition = PartitionSpec::parse("12|34", 4);
      cfg.criteria = {one, two};
      cfg.reference_thresholds = {0.4545, 0.4602};
      cfg.row_labels = {"thm4(i) 1|234", "thm4(ii) 12|34"};
      break;
    }
    case 4: {
      cfg.family = noisy_family("w4", NoiseOrientation::pure_weight_x);
      const COBasis b = builtin_basis("construction1-d2");
      cfg.bases = {b, b, b, b};
      CriterionSpec one;
      one.id = CriterionId::thm4i;
      one.partition = PartitionSpec::parse("1|234", 4);
      cfg.criteria = {one};
      cfg.reference_thresholds = {0.4891};
      cfg.row_labels = {"thm4(i) 1|234"};
      break;
    }
    default:
      throw InputError("example id must be 1, 2, 3 or 4");
  }
  return cfg;
}

}  // namespace cobent
