#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cobent/numerics.hpp"
#include "cobent/scan.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace cobent;

namespace {

CriterionSpec make_spec(const std::string& criterion,
                        const std::vector<double>& coeffs,
                        const std::string& partition, int n_parties) {
  CriterionSpec spec;
  spec.id = criterion_from_string(criterion);
  if (!coeffs.empty()) {
    if (coeffs.size() != 6) {
      throw InputError("coeffs needs six values c11..c32");
    }
    spec.coeffs = TripartiteCoefficients{coeffs[0], coeffs[1], coeffs[2],
                                         coeffs[3], coeffs[4], coeffs[5]};
  }
  if (!partition.empty()) {
    spec.partition = PartitionSpec::parse(partition, n_parties);
  }
  return spec;
}

py::dict report_to_dict(const CriterionReport& r) {
  py::dict d;
  d["criterion"] = r.criterion;
  d["dims"] = r.dims;
  d["basis_labels"] = r.basis_labels;
  d["coefficients"] = r.coefficients;
  d["norms"] = r.norms;
  d["bounds"] = r.bounds;
  d["statistic"] = r.statistic;
  d["bound"] = r.bound;
  d["margin"] = r.margin;
  d["verdict"] = r.verdict();
  d["borderline"] = r.borderline;
  d["convention"] = r.convention;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "entanglement detection via complete orthogonal bases";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError",
                                         PyExc_RuntimeError);

  // numerics
  m.def("kron",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&>(&kron),
        "a"_a, "b"_a);
  m.def("trace_norm", &trace_norm, "m"_a, "sum of singular values");
  m.def("frobenius_norm", &frobenius_norm, "m"_a);
  m.def("trace_norm_oracle", &trace_norm_oracle, "m"_a,
        "independent eigenvalue-route trace norm (test oracle)");
  py::class_<DensityCheck>(m, "DensityCheck")
      .def_readonly("ok", &DensityCheck::ok)
      .def_readonly("hermiticity_residual", &DensityCheck::hermiticity_residual)
      .def_readonly("trace_residual", &DensityCheck::trace_residual)
      .def_readonly("min_eigenvalue", &DensityCheck::min_eigenvalue);
  m.def("is_density_matrix", &is_density_matrix, "m"_a, "tol"_a = 1e-9);

  // cob
  py::class_<COBasis>(m, "COBasis")
      .def_readonly("dim", &COBasis::dim)
      .def_readonly("label", &COBasis::label)
      .def_readonly("operators", &COBasis::operators);
  py::class_<CobValidation>(m, "CobValidation")
      .def_readonly("orthogonality_residual",
                    &CobValidation::orthogonality_residual)
      .def_readonly("worst_alpha", &CobValidation::worst_alpha)
      .def_readonly("worst_beta", &CobValidation::worst_beta)
      .def_readonly("completeness_residual",
                    &CobValidation::completeness_residual)
      .def_readonly("hermiticity_residual",
                    &CobValidation::hermiticity_residual)
      .def_readonly("trace_residual", &CobValidation::trace_residual)
      .def("passed", &CobValidation::passed, "tol"_a = 1e-10);
  m.def("builtin_basis", &builtin_basis, "name"_a);
  m.def("builtin_basis_names", &builtin_basis_names);
  m.def("validate_cob", &validate_cob, "operators"_a);
  m.def("generate_cob", &generate_cob, "dim"_a, "seed"_a = 0);
  py::class_<GSICM>(m, "GSICM")
      .def_readonly("dim", &GSICM::dim)
      .def_readonly("mixing_parameter", &GSICM::mixing_parameter)
      .def_readonly("purity_parameter", &GSICM::purity_parameter)
      .def_readonly("operators", &GSICM::operators);
  m.def("gsicm_from_cob", &gsicm_from_cob, "basis"_a, "lam"_a);
  m.def("probabilities_bridge", &probabilities_bridge, "p"_a, "a"_a, "lam"_a,
        "d"_a);
  m.def("load_basis", &load_basis, "path"_a);
  m.def("save_basis", &save_basis, "basis"_a, "path"_a);

  // states
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("dims", &DensityMatrix::dims)
      .def_readonly("matrix", &DensityMatrix::matrix)
      .def("total_dim", &DensityMatrix::total_dim);
  m.def("pure_state", &pure_state, "amplitudes"_a, "dims"_a);
  m.def("named_state", &named_state, "name"_a);
  py::enum_<NoiseOrientation>(m, "NoiseOrientation")
      .value("noise_weight_x", NoiseOrientation::noise_weight_x)
      .value("pure_weight_x", NoiseOrientation::pure_weight_x);
  py::class_<NoisyStateFamily>(m, "NoisyStateFamily")
      .def_readonly("base", &NoisyStateFamily::base)
      .def_readonly("orientation", &NoisyStateFamily::orientation)
      .def("evaluate", &NoisyStateFamily::evaluate, "x"_a);
  m.def("noisy_family", &noisy_family, "base_state_name"_a, "orientation"_a);
  m.def("load_state", &load_state, "path"_a);
  m.def("save_state", &save_state, "state"_a, "path"_a);

  // correlations
  py::class_<CorrelationTensor>(m, "CorrelationTensor")
      .def_readonly("dims", &CorrelationTensor::dims)
      .def_readonly("basis_labels", &CorrelationTensor::basis_labels)
      .def_readonly("values", &CorrelationTensor::values)
      .def("at", &CorrelationTensor::at, "alpha"_a);
  py::class_<ProductBasis>(m, "ProductBasis").def(py::init<std::vector<COBasis>>());
  m.def("correlation_tensor",
        py::overload_cast<const DensityMatrix&, const std::vector<COBasis>&>(
            &correlation_tensor),
        "rho"_a, "bases"_a);
  m.def("reconstruct", &reconstruct, "tensor"_a, "basis"_a);
  m.def("vector_norm_squared", &vector_norm_squared, "tensor"_a);
  m.def("tensor_to_csv", &tensor_to_csv, "tensor"_a);

  // criteria
  m.def("b_matrix_tripartite", &b_matrix_tripartite, "tensor"_a, "f"_a,
        "cf1"_a, "cf2"_a);
  m.def(
      "theorem1_bounds",
      [](const std::vector<int>& dims, int f, double cf1, double cf2) {
        const auto b = theorem1_bounds(dims, f, cf1, cf2);
        return std::vector<double>(b.begin(), b.end());
      },
      "dims"_a, "f"_a, "cf1"_a, "cf2"_a);
  m.def(
      "gme_statistic",
      [](const CorrelationTensor& t, const std::vector<double>& c) {
        if (c.size() != 6) throw InputError("coeffs needs six values");
        return gme_statistic(
            t, TripartiteCoefficients{c[0], c[1], c[2], c[3], c[4], c[5]});
      },
      "tensor"_a, "coeffs"_a);
  m.def(
      "gme_bound",
      [](const std::vector<int>& dims, const std::vector<double>& c) {
        if (c.size() != 6) throw InputError("coeffs needs six values");
        return gme_bound(
            dims, TripartiteCoefficients{c[0], c[1], c[2], c[3], c[4], c[5]});
      },
      "dims"_a, "coeffs"_a);
  m.def("corollary1_bound", &corollary1_bound, "d"_a, "c11"_a, "c12"_a);
  m.def("b_matrix_mode1", &b_matrix_mode1, "tensor"_a, "l1"_a);
  m.def(
      "b_matrix_partition",
      [](const CorrelationTensor& t, const std::string& partition) {
        return b_matrix_partition(
            t, PartitionSpec::parse(partition, t.n_parties()));
      },
      "tensor"_a, "partition"_a);
  m.def(
      "partition_bound",
      [](const std::vector<int>& dims, const std::string& partition) {
        return partition_bound(
            dims,
            PartitionSpec::parse(partition, static_cast<int>(dims.size())));
      },
      "dims"_a, "partition"_a);
  m.def(
      "evaluate_criterion",
      [](const DensityMatrix& rho, const std::vector<COBasis>& bases,
         const std::string& criterion, const std::vector<double>& coeffs,
         const std::string& partition) {
        const auto spec = make_spec(criterion, coeffs, partition,
                                    static_cast<int>(rho.dims.size()));
        return report_to_dict(evaluate_criterion(rho, bases, spec));
      },
      "rho"_a, "bases"_a, "criterion"_a,
      "coeffs"_a = std::vector<double>{}, "partition"_a = std::string());
  m.def("competitor_curve", &competitor_curve, "name"_a, "x"_a);

  // oracle
  m.def(
      "sample_state",
      [](std::uint64_t seed, int count, const std::vector<int>& dims,
         const std::string& family, const std::string& partition,
         int max_terms, int index) {
        SamplerConfig cfg;
        cfg.seed = seed;
        cfg.count = count;
        cfg.dims = dims;
        cfg.family = sample_family_from_string(family);
        if (!partition.empty()) {
          cfg.partition = PartitionSpec::parse(
              partition, static_cast<int>(dims.size()));
        }
        cfg.max_terms = max_terms;
        return sample_state(cfg, index);
      },
      "seed"_a, "count"_a, "dims"_a, "family"_a, "partition"_a = std::string(),
      "max_terms"_a = 8, "index"_a = 0);
  m.def("permute_parties", &permute_parties, "rho"_a, "perm"_a);
  m.def("symmetrize_parties", &symmetrize_parties, "rho"_a);

  // scan
  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("parameter", &ScanResult::parameter)
      .def_readonly("grid", &ScanResult::grid)
      .def_readonly("statistic", &ScanResult::statistic)
      .def_readonly("margin", &ScanResult::margin)
      .def_readonly("bound", &ScanResult::bound)
      .def_readonly("threshold", &ScanResult::threshold)
      .def_readonly("threshold_tolerance", &ScanResult::threshold_tolerance)
      .def("to_csv", &ScanResult::to_csv)
      .def("to_json", &ScanResult::to_json);
  m.def(
      "scan_threshold",
      [](const NoisyStateFamily& family, const std::vector<COBasis>& bases,
         const std::string& criterion, const std::vector<double>& coeffs,
         const std::string& partition, double lo, double hi, double step,
         double tol, const std::vector<std::string>& competitors) {
        const auto spec =
            make_spec(criterion, coeffs, partition,
                      static_cast<int>(family.base.dims.size()));
        return scan_threshold(family, bases, spec, lo, hi, step, tol,
                              competitors);
      },
      "family"_a, "bases"_a, "criterion"_a,
      "coeffs"_a = std::vector<double>{}, "partition"_a = std::string(),
      "lo"_a = 0.0, "hi"_a = 1.0, "step"_a = 0.05, "tol"_a = 1e-6,
      "competitors"_a = std::vector<std::string>{});

  py::class_<ExampleConfig>(m, "ExampleConfig")
      .def_readonly("id", &ExampleConfig::id)
      .def_readonly("family", &ExampleConfig::family)
      .def_readonly("bases", &ExampleConfig::bases)
      .def_readonly("reference_thresholds",
                    &ExampleConfig::reference_thresholds)
      .def_readonly("row_labels", &ExampleConfig::row_labels)
      .def_readonly("note", &ExampleConfig::note);
  m.def("example_config", &example_config, "id"_a);
  m.def(
      "example_scan",
      [](int id, std::size_t row, double step, double tol) {
        const auto cfg = example_config(id);
        if (row >= cfg.criteria.size()) {
          throw InputError("example row out of range");
        }
        return scan_threshold(cfg.family, cfg.bases, cfg.criteria[row], 0.0,
                              1.0, step, tol);
      },
      "id"_a, "row"_a = 0, "step"_a = 0.05, "tol"_a = 1e-6,
      "runs one pinned example scan");
}
