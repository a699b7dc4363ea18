#include "cobent/states.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>

#include "cobent/numerics.hpp"

namespace cobent {

namespace {

using json = nlohmann::json;

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 2) throw InputError("subsystem dimensions must be >= 2");
    p *= d;
  }
  return p;
}

// flat index of |a1 a2 ... an> with the leftmost factor most significant
int flat_index(const std::vector<int>& digits, const std::vector<int>& dims) {
  int idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
  return idx;
}

DensityMatrix uniform_superposition(const std::vector<std::vector<int>>& kets,
                                    std::vector<int> dims) {
  const int dim = product(dims);
  ComplexVector amp = ComplexVector::Zero(dim);
  const double w = 1.0 / std::sqrt(double(kets.size()));
  for (const auto& k : kets) amp(flat_index(k, dims)) = w;
  return pure_state(amp, std::move(dims));
}

}  // namespace

int DensityMatrix::total_dim() const { return product(dims); }

DensityMatrix pure_state(const ComplexVector& amplitudes,
                         std::vector<int> dims) {
  const int dim = product(dims);
  if (amplitudes.size() != dim) {
    throw InputError("pure_state: amplitude length " +
                     std::to_string(amplitudes.size()) +
                     " does not match total dimension " + std::to_string(dim));
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-6) throw InputError("pure_state: zero amplitude vector");
  if (std::abs(norm - 1.0) > 1e-6) {
    throw InputError("pure_state: amplitudes are not normalized (|norm-1| = " +
                     std::to_string(std::abs(norm - 1.0)) + ")");
  }
  ComplexVector psi = amplitudes / norm;
  DensityMatrix out;
  out.dims = std::move(dims);
  out.matrix = psi * psi.adjoint();
  return out;
}

DensityMatrix named_state(const std::string& name) {
  if (name == "ghz3") {
    return uniform_superposition({{0, 0, 0}, {1, 1, 1}}, {2, 2, 2});
  }
  if (name == "ghz4") {
    return uniform_superposition({{0, 0, 0, 0}, {1, 1, 1, 1}}, {2, 2, 2, 2});
  }
  if (name == "w4") {
    return uniform_superposition(
        {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}},
        {2, 2, 2, 2});
  }
  if (name == "example2_phi") {
    return uniform_superposition(
        {{1, 0, 0}, {2, 1, 0}, {0, 0, 1}, {1, 1, 1}, {2, 2, 1}}, {3, 3, 2});
  }
  throw InputError("unknown named state: " + name);
}

DensityMatrix NoisyStateFamily::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InputError("noisy family parameter must lie in [0, 1]");
  }
  const int dim = base.total_dim();
  const double noise_weight =
      orientation == NoiseOrientation::noise_weight_x ? x : 1.0 - x;
  DensityMatrix out;
  out.dims = base.dims;
  out.matrix = noise_weight / dim * ComplexMatrix::Identity(dim, dim) +
               (1.0 - noise_weight) * base.matrix;
  return out;
}

NoisyStateFamily noisy_family(const std::string& base_state_name,
                              NoiseOrientation orientation) {
  NoisyStateFamily fam;
  fam.base = named_state(base_state_name);
  fam.orientation = orientation;
  return fam;
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file: " + path);
  json doc = json::parse(in);
  std::vector<int> dims = doc.at("dims").get<std::vector<int>>();
  if (doc.contains("amplitudes")) {
    const auto& amps = doc["amplitudes"];
    ComplexVector v(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      v(i) = Complex(amps[i][0].get<double>(), amps[i][1].get<double>());
    }
    return pure_state(v, std::move(dims));
  }
  if (doc.contains("matrix")) {
    const auto& rows = doc["matrix"];
    const int dim = product(dims);
    if (static_cast<int>(rows.size()) != dim) {
      throw InputError("state file: matrix size does not match dims");
    }
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      if (static_cast<int>(rows[i].size()) != dim) {
        throw InputError("state file: matrix is not square");
      }
      for (int j = 0; j < dim; ++j) {
        m(i, j) = Complex(rows[i][j][0].get<double>(),
                          rows[i][j][1].get<double>());
      }
    }
    const DensityCheck check = is_density_matrix(m, 1e-9);
    if (!check.ok) {
      throw ValidationError("state file " + path +
                            " is not a density matrix (min eigenvalue " +
                            std::to_string(check.min_eigenvalue) + ")");
    }
    DensityMatrix out;
    out.dims = std::move(dims);
    out.matrix = std::move(m);
    return out;
  }
  throw InputError("state file needs either 'amplitudes' or 'matrix'");
}

void save_state(const DensityMatrix& state, const std::string& path) {
  json doc;
  doc["dims"] = state.dims;
  json rows = json::array();
  for (Eigen::Index i = 0; i < state.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < state.matrix.cols(); ++j) {
      row.push_back({state.matrix(i, j).real(), state.matrix(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write state file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace cobent
