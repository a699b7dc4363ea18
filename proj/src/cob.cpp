#include "cobent/cob.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cobent/numerics.hpp"
#include "rng.hpp"

namespace cobent {

namespace {

using json = nlohmann::json;

constexpr Complex kI{0.0, 1.0};

ComplexMatrix herm2(Complex a11, Complex a12, Complex a22) {
  ComplexMatrix m(2, 2);
  m << a11, a12, std::conj(a12), a22;
  return m;
}

ComplexMatrix herm3(Complex a11, Complex a12, Complex a13, Complex a22,
                    Complex a23, Complex a33) {
  ComplexMatrix m(3, 3);
  m << a11, a12, a13, std::conj(a12), a22, a23, std::conj(a13),
      std::conj(a23), a33;
  return m;
}

std::vector<ComplexMatrix> construction1_d2() {
  const Complex q{0.25, -0.25};  // (1 - i)/4
  std::vector<ComplexMatrix> ops;
  ops.push_back(herm2(0.5, q, 0.0));
  ops.push_back(herm2(0.0, -std::conj(q), 0.5));
  ops.push_back(herm2(0.0, std::conj(q), 0.5));
  ops.push_back(herm2(0.5, -q, 0.0));
  return ops;
}

std::vector<ComplexMatrix> construction2_d2() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const Complex off{-1.0 / (4.0 * s3), 1.0 / (2.0 * s6)};
  std::vector<ComplexMatrix> ops;
  ops.push_back(herm2(0.25 - 1.0 / (2.0 * s2), off, 0.25 + 1.0 / (2.0 * s2)));
  ops.push_back(herm2(0.25, s3 / 4.0, 0.25));
  ops.push_back(herm2(0.25, Complex(-1.0 / (4.0 * s3), -1.0 / s6), 0.25));
  ops.push_back(herm2(0.25 + 1.0 / (2.0 * s2), off, 0.25 - 1.0 / (2.0 * s2)));
  return ops;
}

std::vector<ComplexMatrix> construction2_d3() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double s7 = std::sqrt(7.0), s15 = std::sqrt(15.0);
  // shared off-diagonal constants
  const Complex a12 = Complex(-7.0, 3.0 * s7) / (84.0 * s3);
  const Complex a13 = kI / (6.0 * s5) - 1.0 / (6.0 * s7);
  const Complex a23 = -(-5.0 * kI + s15) / (30.0 * s2);
  const Complex a23_7 = -(15.0 * kI + s15) / (30.0 * s2);  // A7 only
  const double t = 1.0 / 9.0;

  std::vector<ComplexMatrix> ops;
  ops.push_back(herm3(-2.0 * t, a12, a13, t, a23, 4.0 * t));
  ops.push_back(herm3(t, 2.0 / (3.0 * s3), 0.0, t, 0.0, t));
  ops.push_back(herm3(t, Complex(-1.0, -3.0 * s7) / (12.0 * s3), 0.0, t, 0.0, t));
  ops.push_back(herm3(t, a12, 1.0 / s7, t, 0.0, t));
  ops.push_back(herm3(t, a12, -kI * s5 / 6.0 - 1.0 / (6.0 * s7), t, 0.0, t));
  ops.push_back(herm3(t, a12, a13, t, std::sqrt(2.0 / 15.0), t));
  ops.push_back(herm3(t, a12, a13, t, a23_7, t));
  ops.push_back(herm3(4.0 * t, a12, a13, -2.0 * t, a23, t));
  ops.push_back(herm3(t, a12, a13, 4.0 * t, a23, -2.0 * t));
  return ops;
}

// Orthonormal Hermitian operator basis: B_0 = I/sqrt(d), then the symmetric,
// antisymmetric and diagonal traceless generators, all with Tr(B_j B_k) =
// delta_jk.
std::vector<ComplexMatrix> orthonormal_hermitian_basis(int d) {
  std::vector<ComplexMatrix> mats;
  mats.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(double(d)));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(i, j) = r;
      s(j, i) = r;
      mats.push_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(i, j) = Complex(0, -r);
      a(j, i) = Complex(0, r);
      mats.push_back(a);
    }
  }
  for (int k = 1; k < d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < k; ++i) m(i, i) = 1.0;
    m(k, k) = -double(k);
    m /= std::sqrt(double(k) * (k + 1));
    mats.push_back(m);
  }
  return mats;
}

}  // namespace

CobValidation validate_cob(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw InputError("validate_cob: empty operator list");
  const int d = static_cast<int>(ops[0].rows());
  if (static_cast<int>(ops.size()) != d * d) {
    throw InputError("validate_cob: expected d^2 operators, got " +
                     std::to_string(ops.size()) + " for d = " +
                     std::to_string(d));
  }
  for (const auto& op : ops) {
    if (op.rows() != d || op.cols() != d) {
      throw InputError("validate_cob: mixed operator dimensions");
    }
  }

  CobValidation v;
  const double inv_d = 1.0 / d;
  for (int a = 0; a < d * d; ++a) {
    for (int b = a; b < d * d; ++b) {
      const Complex t = (ops[a] * ops[b]).trace();
      const double target = (a == b) ? inv_d : 0.0;
      const double res = std::abs(t - target);
      if (res > v.orthogonality_residual) {
        v.orthogonality_residual = res;
        v.worst_alpha = a + 1;
        v.worst_beta = b + 1;
      }
    }
    v.hermiticity_residual =
        std::max(v.hermiticity_residual,
                 (ops[a] - ops[a].adjoint()).cwiseAbs().maxCoeff());
    v.trace_residual =
        std::max(v.trace_residual, std::abs(ops[a].trace() - inv_d));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& op : ops) sum += op;
  v.completeness_residual = (sum - ComplexMatrix::Identity(d, d)).norm();
  return v;
}

COBasis builtin_basis(const std::string& name) {
  COBasis basis;
  basis.label = name;
  if (name == "construction1-d2") {
    basis.dim = 2;
    basis.operators = construction1_d2();
  } else if (name == "construction2-d2") {
    basis.dim = 2;
    basis.operators = construction2_d2();
  } else if (name == "construction2-d3") {
    basis.dim = 3;
    basis.operators = construction2_d3();
  } else {
    throw InputError("unknown builtin basis: " + name);
  }
  const CobValidation v = validate_cob(basis.operators);
  if (!v.passed(1e-10)) {
    std::ostringstream msg;
    msg << "builtin basis " << name << " failed validation: pair ("
        << v.worst_alpha << "," << v.worst_beta << ") orthogonality residual "
        << v.orthogonality_residual << ", completeness residual "
        << v.completeness_residual;
    throw ValidationError(msg.str());
  }
  return basis;
}

std::vector<std::string> builtin_basis_names() {
  return {"construction1-d2", "construction2-d2", "construction2-d3"};
}

COBasis generate_cob(int dim, std::uint64_t seed) {
  if (dim < 2) throw InputError("generate_cob: dimension must be >= 2");
  const int n = dim * dim;
  const auto herm = orthonormal_hermitian_basis(dim);

  // Orthogonal n x n matrix whose first column is the constant vector 1/d,
  // completed by Gram-Schmidt over seeded Gaussian columns.
  detail::Gaussian rng(detail::mix_seed(seed, 0x0b5eed));
  RealMatrix R(n, n);
  R.col(0).setConstant(1.0 / dim);
  int built = 1;
  while (built < n) {
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    for (int c = 0; c < built; ++c) v -= R.col(c).dot(v) * R.col(c);
    const double norm = v.norm();
    if (norm < 1e-8) continue;  // rare degenerate draw, retry
    R.col(built) = v / norm;
    ++built;
  }

  COBasis basis;
  basis.dim = dim;
  basis.label = "generated-d" + std::to_string(dim) + "-seed" +
                std::to_string(seed);
  const double scale = 1.0 / std::sqrt(double(dim));
  basis.operators.reserve(n);
  for (int a = 0; a < n; ++a) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < n; ++j) m += R(a, j) * herm[j];
    basis.operators.push_back(scale * m);
  }
  return basis;
}

GSICM gsicm_from_cob(const COBasis& basis, double lambda) {
  const int d = basis.dim;
  const double lambda_star = 1.0 / std::sqrt(double(d) + 1.0);
  if (!(lambda > 0.0) || lambda > lambda_star + 1e-12) {
    throw InputError("gsicm_from_cob: lambda must lie in (0, 1/sqrt(d+1)]");
  }
  GSICM g;
  g.dim = d;
  g.mixing_parameter = lambda;
  const ComplexMatrix offset =
      (1.0 - lambda) / double(d * d) * ComplexMatrix::Identity(d, d);
  for (const auto& a : basis.operators) {
    ComplexMatrix p = lambda * a + offset;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
      throw InputError(
          "gsicm_from_cob: operator positivity fails at lambda = " +
          std::to_string(lambda));
    }
    g.operators.push_back(std::move(p));
  }
  g.purity_parameter = std::real((g.operators[0] * g.operators[0]).trace());
  return g;
}

std::vector<double> probabilities_bridge(const std::vector<double>& p,
                                         double a, double lambda, int d) {
  if (static_cast<int>(p.size()) != d * d) {
    throw InputError("probabilities_bridge: expected d^2 probabilities");
  }
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InputError("probabilities_bridge: probabilities must sum to 1");
  }
  const double denom = a * d * d * d - 1.0;
  if (std::abs(denom) < 1e-14) {
    throw InputError("probabilities_bridge: a d^3 = 1 is singular");
  }
  const double gain = lambda * (d * d - 1.0) / denom;
  const double shift = 1.0 / (d * d) - gain / (d * d);
  std::vector<double> mu(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mu[i] = gain * p[i] + shift;
  return mu;
}

namespace {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows) {
  const auto nr = rows.size();
  if (nr == 0) throw InputError("basis file: empty matrix");
  const auto nc = rows[0].size();
  ComplexMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw InputError("basis file: ragged matrix");
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& e = rows[i][j];
      if (!e.is_array() || e.size() != 2) {
        throw InputError("basis file: entries must be [re, im] pairs");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace

COBasis load_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open basis file: " + path);
  json doc = json::parse(in);
  COBasis basis;
  basis.dim = doc.at("dim").get<int>();
  basis.label = doc.value("label", path);
  for (const auto& op : doc.at("operators")) {
    basis.operators.push_back(matrix_from_json(op));
  }
  const CobValidation v = validate_cob(basis.operators);
  if (!v.passed(1e-10)) {
    std::ostringstream msg;
    msg << "basis file " << path << " failed validation: pair ("
        << v.worst_alpha << "," << v.worst_beta << ") orthogonality residual "
        << v.orthogonality_residual << ", completeness residual "
        << v.completeness_residual;
    throw ValidationError(msg.str());
  }
  return basis;
}

void save_basis(const COBasis& basis, const std::string& path) {
  json doc;
  doc["dim"] = basis.dim;
  doc["label"] = basis.label;
  json ops = json::array();
  for (const auto& op : basis.operators) ops.push_back(matrix_to_json(op));
  doc["operators"] = std::move(ops);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write basis file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace cobent
