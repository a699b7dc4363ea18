#include "cobent/criteria.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cobent/numerics.hpp"

namespace cobent {

namespace {

using json = nlohmann::json;

constexpr double kBorderline = 1e-9;

int square(int d) { return d * d; }

double dims_product(const std::vector<int>& dims) {
  double p = 1.0;
  for (int d : dims) p *= d;
  return p;
}

void require_tripartite(const CorrelationTensor& t) {
  if (t.n_parties() != 3) {
    throw InputError("criterion requires a tripartite tensor");
  }
}

std::pair<int, int> other_labels(int f) {
  switch (f) {
    case 1: return {2, 3};
    case 2: return {1, 3};
    case 3: return {1, 2};
    default: throw InputError("party label must be 1, 2 or 3");
  }
}

std::string bipartition_name(int f) {
  const auto [g, h] = other_labels(f);
  return std::to_string(f) + "|" + std::to_string(g) + std::to_string(h);
}

}  // namespace

PartitionSpec PartitionSpec::parse(const std::string& text, int n_parties) {
  PartitionSpec p;
  p.n = n_parties;
  std::vector<int> group;
  const bool with_commas = text.find(',') != std::string::npos;
  auto flush = [&] {
    if (group.empty()) throw InputError("partition has an empty group");
    p.groups.push_back(group);
    group.clear();
  };
  if (with_commas) {
    std::string token;
    for (char c : text + "|") {
      if (c == ',' || c == '|') {
        if (!token.empty()) {
          group.push_back(std::stoi(token));
          token.clear();
        }
        if (c == '|') flush();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        token.push_back(c);
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw InputError("bad character in partition: " + text);
      }
    }
  } else {
    for (char c : text + "|") {
      if (c == '|') {
        flush();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        group.push_back(c - '0');
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw InputError("bad character in partition: " + text);
      }
    }
  }
  p.validate();
  return p;
}

std::string PartitionSpec::to_string() const {
  std::ostringstream out;
  bool multi_digit = false;
  for (const auto& g : groups) {
    for (int l : g) multi_digit |= l > 9;
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out << "|";
    for (std::size_t j = 0; j < groups[i].size(); ++j) {
      if (j && multi_digit) out << ",";
      out << groups[i][j];
    }
  }
  return out.str();
}

void PartitionSpec::validate() const {
  if (groups.empty()) throw InputError("partition has no groups");
  std::set<int> seen;
  for (const auto& g : groups) {
    if (g.empty()) throw InputError("partition has an empty group");
    for (int l : g) {
      if (l < 1 || l > n) {
        throw InputError("partition label " + std::to_string(l) +
                         " outside 1.." + std::to_string(n));
      }
      if (!seen.insert(l).second) {
        throw InputError("partition repeats label " + std::to_string(l));
      }
    }
  }
  if (static_cast<int>(seen.size()) != n) {
    throw InputError("partition must cover every party 1.." +
                     std::to_string(n));
  }
}

std::vector<int> PartitionSpec::flattened() const {
  std::vector<int> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

std::array<double, 2> TripartiteCoefficients::for_party(int f) const {
  switch (f) {
    case 1: return {c11, c12};
    case 2: return {c21, c22};
    case 3: return {c31, c32};
    default: throw InputError("party label must be 1, 2 or 3");
  }
}

bool TripartiteCoefficients::is_zero(int f) const {
  const auto c = for_party(f);
  return c[0] == 0.0 && c[1] == 0.0;
}

RealMatrix b_matrix_tripartite(const CorrelationTensor& t, int f, double cf1,
                               double cf2) {
  require_tripartite(t);
  const auto [g, h] = other_labels(f);
  const int df = t.dims[f - 1];
  const int dg = t.dims[g - 1];
  const int dh = t.dims[h - 1];
  const int block = square(dg) * square(dh);

  RealMatrix b = RealMatrix::Zero(square(df), df * block);
  std::vector<int> idx(3);
  for (int af = 0; af < square(df); ++af) {
    // row of the second block carrying this af, and its column block
    const int r2 = square(df) - 1 - af;
    const int j2 = r2 / df;
    for (int ag = 0; ag < square(dg); ++ag) {
      for (int ah = 0; ah < square(dh); ++ah) {
        idx[f - 1] = af;
        idx[g - 1] = ag;
        idx[h - 1] = ah;
        const double mu = t.at(idx);
        const int col = ag * square(dh) + ah;
        b(af, col) += cf1 * mu;
        b(r2, j2 * block + col) += cf2 * mu;
      }
    }
  }
  return b;
}

std::array<double, 3> theorem1_bounds(const std::vector<int>& dims, int f,
                                      double cf1, double cf2) {
  if (dims.size() != 3) throw InputError("theorem1_bounds needs three dims");
  const auto [g, h] = other_labels(f);
  const double df = dims[f - 1];
  const double dg = dims[g - 1];
  const double dh = dims[h - 1];
  const double c1 = std::abs(cf1), c2 = std::abs(cf2);
  const double own = c1 * std::sqrt(1.0 / (df * dg * dh)) +
                     c2 * std::sqrt(1.0 / (dg * dh));
  const double cross = c2 * std::sqrt(df / (dg * dh));
  const double via_g =
      c1 * std::sqrt(std::min(df * df, dh * dh) / (df * dg * dh)) + cross;
  const double via_h =
      c1 * std::sqrt(std::min(df * df, dg * dg) / (df * dg * dh)) + cross;
  return {own, via_g, via_h};
}

double q_value(const std::vector<int>& dims, int f, double cf1, double cf2) {
  const auto b = theorem1_bounds(dims, f, cf1, cf2);
  return std::max({b[0], b[1], b[2]});
}

double gme_statistic(const CorrelationTensor& t,
                     const TripartiteCoefficients& c) {
  require_tripartite(t);
  double sum = 0.0;
  for (int f = 1; f <= 3; ++f) {
    const auto cf = c.for_party(f);
    sum += trace_norm(b_matrix_tripartite(t, f, cf[0], cf[1]));
  }
  return sum / 3.0;
}

double gme_bound(const std::vector<int>& dims,
                 const TripartiteCoefficients& c) {
  double sum = 0.0;
  for (int f = 1; f <= 3; ++f) {
    const auto cf = c.for_party(f);
    sum += q_value(dims, f, cf[0], cf[1]);
  }
  return sum / 3.0;
}

double corollary1_bound(int d, double c11, double c12) {
  if (d < 2) throw InputError("corollary1_bound: dimension must be >= 2");
  const double dd = d;
  return (c11 * std::sqrt(1.0 / (dd * dd * dd)) + c12 / dd +
          2.0 * c11 * std::sqrt(1.0 / dd) + 2.0 * c12 * std::sqrt(1.0 / dd)) /
         3.0;
}

RealMatrix b_matrix_mode1(const CorrelationTensor& t, int l1) {
  const int n = t.n_parties();
  if (l1 < 1 || l1 > n) {
    throw InputError("mode unfolding label outside 1.." + std::to_string(n));
  }
  const int rows = square(t.dims[l1 - 1]);
  int cols = 1;
  for (int s = 0; s < n; ++s) {
    if (s != l1 - 1) cols *= square(t.dims[s]);
  }
  RealMatrix b(rows, cols);
  std::vector<int> alpha(n, 0);
  for (Eigen::Index flat = 0; flat < t.values.size(); ++flat) {
    int col = 0;
    for (int s = 0; s < n; ++s) {
      if (s != l1 - 1) col = col * square(t.dims[s]) + alpha[s];
    }
    b(alpha[l1 - 1], col) = t.values(flat);
    for (int s = n - 1; s >= 0; --s) {
      if (++alpha[s] < square(t.dims[s])) break;
      alpha[s] = 0;
    }
  }
  return b;
}

RealMatrix b_matrix_partition(const CorrelationTensor& t,
                              const PartitionSpec& p) {
  const int n = t.n_parties();
  if (p.n != n) throw InputError("partition arity does not match the tensor");
  p.validate();
  if (p.groups.size() < 2) {
    throw InputError("partition criterion needs at least two groups");
  }

  const auto& last = p.groups.back();
  const int ln = last.back();
  const int dln = t.dims[ln - 1];
  std::vector<int> inner(last.begin(), last.end() - 1);
  std::vector<int> outside;
  for (std::size_t gi = 0; gi + 1 < p.groups.size(); ++gi) {
    outside.insert(outside.end(), p.groups[gi].begin(), p.groups[gi].end());
  }

  int rin = 1;
  for (int l : inner) rin *= square(t.dims[l - 1]);
  int cout_span = 1;
  for (int l : outside) cout_span *= square(t.dims[l - 1]);

  RealMatrix b(dln * rin, cout_span * dln);
  std::vector<int> idx(n, 0);

  std::vector<int> inner_alpha(inner.size(), 0);
  std::vector<int> outside_alpha(outside.size(), 0);
  for (int a = 0; a < dln; ++a) {
    std::fill(inner_alpha.begin(), inner_alpha.end(), 0);
    for (int ri = 0; ri < rin; ++ri) {
      const int row = a * rin + ri;
      std::fill(outside_alpha.begin(), outside_alpha.end(), 0);
      for (int co = 0; co < cout_span; ++co) {
        for (std::size_t k = 0; k < inner.size(); ++k) {
          idx[inner[k] - 1] = inner_alpha[k];
        }
        for (std::size_t k = 0; k < outside.size(); ++k) {
          idx[outside[k] - 1] = outside_alpha[k];
        }
        for (int j = 0; j < dln; ++j) {
          idx[ln - 1] = j * dln + a;
          b(row, co * dln + j) = t.at(idx);
        }
        for (int k = static_cast<int>(outside.size()) - 1; k >= 0; --k) {
          if (++outside_alpha[k] < square(t.dims[outside[k] - 1])) break;
          outside_alpha[k] = 0;
        }
      }
      for (int k = static_cast<int>(inner.size()) - 1; k >= 0; --k) {
        if (++inner_alpha[k] < square(t.dims[inner[k] - 1])) break;
        inner_alpha[k] = 0;
      }
    }
  }
  return b;
}

double partition_bound(const std::vector<int>& dims, const PartitionSpec& p) {
  p.validate();
  const auto flat = p.flattened();
  double prod = 1.0;
  for (std::size_t i = 0; i + 1 < flat.size(); ++i) prod *= dims[flat[i] - 1];
  return std::sqrt(1.0 / prod);
}

CriterionId criterion_from_string(const std::string& name) {
  if (name == "thm1") return CriterionId::thm1;
  if (name == "thm2") return CriterionId::thm2;
  if (name == "cor1") return CriterionId::cor1;
  if (name == "thm3") return CriterionId::thm3;
  if (name == "thm4i") return CriterionId::thm4i;
  if (name == "thm4ii") return CriterionId::thm4ii;
  throw InputError("unknown criterion: " + name);
}

std::string criterion_to_string(CriterionId id) {
  switch (id) {
    case CriterionId::thm1: return "thm1";
    case CriterionId::thm2: return "thm2";
    case CriterionId::cor1: return "cor1";
    case CriterionId::thm3: return "thm3";
    case CriterionId::thm4i: return "thm4i";
    case CriterionId::thm4ii: return "thm4ii";
  }
  return "?";
}

namespace {

void finish_report(CriterionReport& r) {
  r.margin = r.statistic - r.bound;
  r.borderline = std::abs(r.margin) <= kBorderline;
  r.detected = r.margin > 0.0 && !r.borderline;
}

// The singleton party of a bipartition like "3|12".
int singleton_party(const PartitionSpec& p, const char* what) {
  if (p.groups.size() != 2 || p.groups.front().size() != 1) {
    throw InputError(std::string(what) +
                     " needs a bipartition with a singleton first group");
  }
  return p.groups.front().front();
}

std::string mode1_name(int l1, int n) {
  std::string rest;
  for (int l = 1; l <= n; ++l) {
    if (l != l1) rest += std::to_string(l);
  }
  return std::to_string(l1) + "|" + rest;
}

}  // namespace

CriterionReport evaluate_criterion(const CorrelationTensor& t,
                                   const CriterionSpec& spec) {
  CriterionReport r;
  r.criterion = criterion_to_string(spec.id);
  r.dims = t.dims;
  r.basis_labels = t.basis_labels;

  const auto& c = spec.coeffs;
  switch (spec.id) {
    case CriterionId::thm1: {
      require_tripartite(t);
      if (!spec.partition) throw InputError("thm1 needs a bipartition f|gh");
      const int f = singleton_party(*spec.partition, "thm1");
      const auto cf = c.for_party(f);
      r.coefficients = {c.c11, c.c12, c.c21, c.c22, c.c31, c.c32};
      r.statistic = trace_norm(b_matrix_tripartite(t, f, cf[0], cf[1]));
      const auto bounds = theorem1_bounds(t.dims, f, cf[0], cf[1]);
      r.bounds.assign(bounds.begin(), bounds.end());
      r.bound = bounds[0];
      r.norms[bipartition_name(f)] = r.statistic;
      break;
    }
    case CriterionId::thm2: {
      require_tripartite(t);
      r.coefficients = {c.c11, c.c12, c.c21, c.c22, c.c31, c.c32};
      int active = 0, active_f = 0;
      double mean_norm = 0.0;
      std::array<double, 3> qs{};
      for (int f = 1; f <= 3; ++f) {
        const auto cf = c.for_party(f);
        const double norm =
            trace_norm(b_matrix_tripartite(t, f, cf[0], cf[1]));
        r.norms[bipartition_name(f)] = norm;
        mean_norm += norm / 3.0;
        qs[f - 1] = q_value(t.dims, f, cf[0], cf[1]);
        if (!c.is_zero(f)) {
          ++active;
          active_f = f;
        }
      }
      r.bounds.assign(qs.begin(), qs.end());
      if (active == 1) {
        // With a single active party the averaged statistic and bound share
        // a factor 1/3; report the bare norm against its Q value instead.
        r.convention = "single_active_partition";
        r.statistic = r.norms[bipartition_name(active_f)];
        r.bound = qs[active_f - 1];
      } else {
        r.statistic = mean_norm;
        r.bound = (qs[0] + qs[1] + qs[2]) / 3.0;
      }
      break;
    }
    case CriterionId::cor1: {
      require_tripartite(t);
      if (t.dims[0] != t.dims[1] || t.dims[1] != t.dims[2]) {
        throw InputError("cor1 requires equal local dimensions");
      }
      if (c.c11 < 0 || c.c12 < 0) {
        throw InputError("cor1 is stated for nonnegative coefficients");
      }
      TripartiteCoefficients sym;
      sym.c11 = sym.c21 = sym.c31 = c.c11;
      sym.c12 = sym.c22 = sym.c32 = c.c12;
      r.coefficients = {sym.c11, sym.c12, sym.c21,
                        sym.c22, sym.c31, sym.c32};
      for (int f = 1; f <= 3; ++f) {
        r.norms[bipartition_name(f)] = trace_norm(
            b_matrix_tripartite(t, f, sym.c11, sym.c12));
      }
      r.statistic = gme_statistic(t, sym);
      r.bound = corollary1_bound(t.dims[0], c.c11, c.c12);
      r.bounds = {r.bound};
      break;
    }
    case CriterionId::thm3: {
      r.statistic = trace_norm(b_matrix_mode1(t, 1));
      r.bound = std::sqrt(1.0 / dims_product(t.dims));
      r.bounds = {r.bound};
      r.norms[mode1_name(1, t.n_parties())] = r.statistic;
      break;
    }
    case CriterionId::thm4i: {
      int l1 = 1;
      if (spec.partition) l1 = singleton_party(*spec.partition, "thm4i");
      r.statistic = trace_norm(b_matrix_mode1(t, l1));
      r.bound = std::sqrt(1.0 / dims_product(t.dims));
      r.bounds = {r.bound};
      r.norms[mode1_name(l1, t.n_parties())] = r.statistic;
      break;
    }
    case CriterionId::thm4ii: {
      if (!spec.partition) throw InputError("thm4ii needs a partition");
      r.statistic = trace_norm(b_matrix_partition(t, *spec.partition));
      r.bound = partition_bound(t.dims, *spec.partition);
      r.bounds = {r.bound};
      r.norms[spec.partition->to_string()] = r.statistic;
      break;
    }
  }
  finish_report(r);
  return r;
}

CriterionReport evaluate_criterion(const DensityMatrix& rho,
                                   const std::vector<COBasis>& bases,
                                   const CriterionSpec& spec) {
  return evaluate_criterion(correlation_tensor(rho, bases), spec);
}

std::string CriterionReport::to_json() const {
  json doc;
  doc["criterion"] = criterion;
  doc["dims"] = dims;
  doc["basis_labels"] = basis_labels;
  if (!coefficients.empty()) doc["coefficients"] = coefficients;
  doc["norms"] = norms;
  doc["bounds"] = bounds;
  doc["statistic"] = statistic;
  doc["bound"] = bound;
  doc["margin"] = margin;
  doc["verdict"] = verdict();
  doc["borderline"] = borderline;
  if (!convention.empty()) doc["convention"] = convention;
  return doc.dump(2);
}

double competitor_curve(const std::string& name, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InputError("competitor curves are defined on [0, 1]");
  }
  if (name == "g1") return 2.0 - 2.0 * x - std::sqrt(3.0);
  if (name == "g3") return 9.0 * x * x - 4.0;
  if (name == "g4") {
    return std::sqrt(1.0 + x * x) + 2.0 * std::sqrt(2.0) * x +
           (x - x * x) / (1.0 + x * x) - 4.0;
  }
  if (name == "g5") {
    return (4.0 + 2.0 * x * x) / (2.0 * std::sqrt(4.0 + x * x)) + x - 2.0;
  }
  throw InputError("unknown competitor curve: " + name);
}

std::vector<std::string> competitor_names() { return {"g1", "g3", "g4", "g5"}; }

}  // namespace cobent
