// cobent: entanglement detection from complete-orthogonal-basis correlation
// tensors. Subcommands: basis, verdict, scan, reproduce, tensor.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cobent/scan.hpp"

using namespace cobent;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;

bool looks_like_file(const std::string& spec) {
  return spec.find('/') != std::string::npos ||
         spec.find(".json") != std::string::npos;
}

COBasis basis_from_spec(const std::string& spec) {
  if (looks_like_file(spec)) return load_basis(spec);
  return builtin_basis(spec);
}

DensityMatrix state_from_spec(const std::string& spec) {
  if (looks_like_file(spec)) return load_state(spec);
  return named_state(spec);
}

std::vector<COBasis> resolve_bases(const std::vector<std::string>& specs,
                                   const std::vector<int>& dims,
                                   std::uint64_t seed) {
  std::vector<COBasis> bases;
  if (!specs.empty()) {
    for (const auto& s : specs) bases.push_back(basis_from_spec(s));
    if (bases.size() == 1 && dims.size() > 1) {
      for (std::size_t i = 1; i < dims.size(); ++i) bases.push_back(bases[0]);
    }
    if (bases.size() != dims.size()) {
      throw InputError("need one basis per subsystem (" +
                       std::to_string(dims.size()) + "), got " +
                       std::to_string(bases.size()));
    }
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (bases[i].dim != dims[i]) {
        throw InputError("basis " + bases[i].label + " has dimension " +
                         std::to_string(bases[i].dim) + " but subsystem " +
                         std::to_string(i + 1) + " needs " +
                         std::to_string(dims[i]));
      }
    }
    return bases;
  }
  for (int d : dims) {
    if (d == 2) {
      bases.push_back(builtin_basis("construction1-d2"));
    } else if (d == 3) {
      bases.push_back(builtin_basis("construction2-d3"));
    } else {
      bases.push_back(generate_cob(d, seed));
    }
  }
  return bases;
}

TripartiteCoefficients parse_coeffs(const std::string& text) {
  std::vector<double> vals;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) vals.push_back(std::stod(token));
  if (vals.size() != 6) {
    throw InputError("--coeffs needs six values c11,c12,c21,c22,c31,c32");
  }
  TripartiteCoefficients c;
  c.c11 = vals[0];
  c.c12 = vals[1];
  c.c21 = vals[2];
  c.c22 = vals[3];
  c.c31 = vals[4];
  c.c32 = vals[5];
  return c;
}

struct GridSpec {
  double lo = 0.0, hi = 1.0, step = 0.05;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::stringstream in(text);
  std::string token;
  std::vector<double> vals;
  while (std::getline(in, token, ':')) vals.push_back(std::stod(token));
  if (vals.size() != 3) throw InputError("--grid wants a:b:step");
  g.lo = vals[0];
  g.hi = vals[1];
  g.step = vals[2];
  return g;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Values from an optional JSON config file; command-line flags take
// precedence, config values override built-in example pins.
struct Config {
  json doc = json::object();

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    doc = json::parse(in);
  }
  template <typename T>
  void fill(const CLI::Option* opt, const std::string& key, T& value) const {
    if (opt->count() == 0 && doc.contains(key)) {
      value = doc.at(key).get<T>();
    }
  }
};

int cmd_basis(const std::string& action, const std::string& name,
              const std::string& file, double tol,
              const std::string& format) {
  COBasis basis;
  CobValidation v;
  std::string validation_error;
  bool loaded = true;
  try {
    basis = file.empty() ? builtin_basis(name) : load_basis(file);
    v = validate_cob(basis.operators);
  } catch (const ValidationError& e) {
    // capture the residuals of the failing set instead of bailing out
    loaded = false;
    validation_error = e.what();
  }

  if (action == "show") {
    if (!loaded) {
      std::cerr << validation_error << "\n";
      return kExitValidation;
    }
    std::cout << "label: " << basis.label << "\ndim: " << basis.dim << "\n";
    for (std::size_t k = 0; k < basis.operators.size(); ++k) {
      std::cout << "operator " << (k + 1) << ":\n";
      const auto& m = basis.operators[k];
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          std::cout << "  (" << fmt(m(i, j).real()) << ", "
                    << fmt(m(i, j).imag()) << ")";
        }
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  if (!loaded) {
    std::cerr << validation_error << "\n";
    return kExitValidation;
  }
  const bool pass = v.passed(tol);
  if (format == "json") {
    json doc;
    doc["label"] = basis.label;
    doc["dim"] = basis.dim;
    doc["orthogonality_residual"] = v.orthogonality_residual;
    doc["worst_pair"] = {v.worst_alpha, v.worst_beta};
    doc["completeness_residual"] = v.completeness_residual;
    doc["hermiticity_residual"] = v.hermiticity_residual;
    doc["trace_residual"] = v.trace_residual;
    doc["tolerance"] = tol;
    doc["pass"] = pass;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "label: " << basis.label << "\n"
              << "orthogonality residual: " << fmt(v.orthogonality_residual)
              << " (pair " << v.worst_alpha << "," << v.worst_beta << ")\n"
              << "completeness residual: " << fmt(v.completeness_residual)
              << "\n"
              << "hermiticity residual: " << fmt(v.hermiticity_residual)
              << "\n"
              << "trace residual: " << fmt(v.trace_residual) << "\n"
              << (pass ? "pass" : "fail") << " at tolerance " << fmt(tol)
              << "\n";
  }
  return pass ? kExitOk : kExitValidation;
}

int cmd_reproduce(int id, double tol) {
  const ExampleConfig cfg = example_config(id);
  std::printf("example %d (%zu %s)\n", id, cfg.criteria.size(),
              cfg.criteria.size() == 1 ? "criterion" : "criteria");
  std::printf("%-34s %10s %12s %10s  %s\n", "criterion", "reference",
              "computed", "|diff|", "status");
  bool all_ok = true;
  for (std::size_t k = 0; k < cfg.criteria.size(); ++k) {
    const auto scan = scan_threshold(cfg.family, cfg.bases, cfg.criteria[k],
                                     0.0, 1.0, 0.05, 1e-6);
    const double ref = cfg.reference_thresholds[k];
    if (scan.threshold) {
      const double diff = std::abs(*scan.threshold - ref);
      const bool ok = diff <= tol;
      all_ok = all_ok && ok;
      std::printf("%-34s %10.4f %12.6f %10.2e  %s\n",
                  cfg.row_labels[k].c_str(), ref, *scan.threshold, diff,
                  ok ? "PASS" : "FAIL");
    } else {
      all_ok = false;
      std::printf("%-34s %10.4f %12s %10s  FAIL\n",
                  cfg.row_labels[k].c_str(), ref, "absent", "-");
    }
  }
  if (!cfg.note.empty()) std::printf("note: %s\n", cfg.note.c_str());
  return all_ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement detection via complete orthogonal bases"};
  app.require_subcommand(1);

  // ---- basis ----
  auto* basis_cmd = app.add_subcommand("basis", "validate or print a basis");
  std::string basis_action;
  basis_cmd->add_option("action", basis_action, "validate | show")
      ->required()
      ->check(CLI::IsMember({"validate", "show"}));
  std::string basis_name, basis_file, basis_format = "text";
  double basis_tol = 1e-10;
  basis_cmd->add_option("--name", basis_name, "builtin basis name");
  basis_cmd->add_option("--file", basis_file, "basis JSON file");
  basis_cmd->add_option("--tol", basis_tol, "validation tolerance");
  basis_cmd->add_option("--format", basis_format)
      ->check(CLI::IsMember({"text", "json"}));

  // ---- shared options for verdict / scan / tensor ----
  std::string state_spec, family_spec, orientation = "pure";
  std::vector<std::string> basis_specs;
  std::string criterion_name = "thm2", partition_text, coeffs_text, config_path;
  std::string format = "json";
  std::string competitors_text;
  std::string grid_text = "0:1:0.05";
  double x_value = 0.0, tol = 1e-6;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_family) {
    cmd->add_option("--state", state_spec, "named state or state file");
    if (with_family) {
      cmd->add_option("--family", family_spec,
                      "example1..example4, or a named pure state combined "
                      "with --orientation");
      cmd->add_option("--orientation", orientation,
                      "which weight x carries: pure | noise")
          ->check(CLI::IsMember({"pure", "noise"}));
    }
    cmd->add_option("--basis", basis_specs,
                    "basis per subsystem (name or file; repeatable)");
    cmd->add_option("--criterion", criterion_name,
                    "thm1 | thm2 | cor1 | thm3 | thm4i | thm4ii");
    cmd->add_option("--partition", partition_text, "e.g. \"3|12\" or \"12|34\"");
    cmd->add_option("--coeffs", coeffs_text, "c11,c12,c21,c22,c31,c32");
    cmd->add_option("--seed", seed, "seed for generated bases");
    cmd->add_option("--config", config_path, "JSON config file");
  };

  auto* verdict_cmd =
      app.add_subcommand("verdict", "evaluate one criterion on one state");
  add_common(verdict_cmd, true);
  verdict_cmd->add_option("--x", x_value, "noise parameter for --family");
  std::string verdict_format = "json";
  verdict_cmd->add_option("--format", verdict_format)
      ->check(CLI::IsMember({"json"}));

  auto* scan_cmd = app.add_subcommand(
      "scan", "scan the criterion margin over the noise parameter");
  add_common(scan_cmd, true);
  scan_cmd->add_option("--grid", grid_text, "a:b:step");
  scan_cmd->add_option("--tol", tol, "bisection tolerance (>= 1e-8)");
  scan_cmd->add_option("--competitors", competitors_text,
                       "comma-separated comparison curves (g1,g3,g4,g5)");
  scan_cmd->add_option("--format", format)->check(
      CLI::IsMember({"csv", "json"}));

  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "rerun a bundled example end to end");
  int example_id = 0;
  double reproduce_tol = 5e-4;
  reproduce_cmd->add_option("id", example_id, "example 1..4")->required();
  reproduce_cmd->add_option("--tol", reproduce_tol,
                            "threshold comparison tolerance");

  auto* tensor_cmd =
      app.add_subcommand("tensor", "dump a correlation tensor as CSV");
  add_common(tensor_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (basis_cmd->parsed()) {
      if (basis_name.empty() == basis_file.empty()) {
        throw InputError("basis: give exactly one of --name or --file");
      }
      return cmd_basis(basis_action, basis_name, basis_file, basis_tol,
                       basis_format);
    }

    Config config;
    if (!config_path.empty()) config.load(config_path);

    if (reproduce_cmd->parsed()) {
      return cmd_reproduce(example_id, reproduce_tol);
    }

    // Apply config-file fallbacks for options the command line left unset.
    auto* active = verdict_cmd->parsed()   ? verdict_cmd
                   : scan_cmd->parsed()    ? scan_cmd
                                           : tensor_cmd;
    config.fill(active->get_option("--state"), "state", state_spec);
    config.fill(active->get_option("--criterion"), "criterion",
                criterion_name);
    config.fill(active->get_option("--partition"), "partition",
                partition_text);
    config.fill(active->get_option("--coeffs"), "coeffs", coeffs_text);
    config.fill(active->get_option("--basis"), "basis", basis_specs);
    if (active != tensor_cmd) {
      config.fill(active->get_option("--family"), "family", family_spec);
      config.fill(active->get_option("--orientation"), "orientation",
                  orientation);
    }
    if (scan_cmd->parsed()) {
      config.fill(scan_cmd->get_option("--grid"), "grid", grid_text);
      config.fill(scan_cmd->get_option("--tol"), "tol", tol);
      config.fill(scan_cmd->get_option("--format"), "format", format);
    }

    // Resolve the example pin, if any; explicit flags override its pieces.
    std::optional<ExampleConfig> pin;
    if (family_spec.rfind("example", 0) == 0 && family_spec.size() == 8) {
      pin = example_config(family_spec[7] - '0');
    }

    NoisyStateFamily family;
    DensityMatrix state;
    bool have_family = false;
    if (pin) {
      family = pin->family;
      have_family = true;
    } else if (!family_spec.empty()) {
      family = noisy_family(family_spec,
                            orientation == "noise"
                                ? NoiseOrientation::noise_weight_x
                                : NoiseOrientation::pure_weight_x);
      have_family = true;
    }
    if (!state_spec.empty()) {
      state = state_from_spec(state_spec);
    } else if (have_family) {
      state = family.evaluate(verdict_cmd->parsed() ? x_value : 0.0);
    } else {
      throw InputError("give --state or --family");
    }

    std::vector<COBasis> bases;
    if (!basis_specs.empty() || !pin) {
      bases = resolve_bases(basis_specs, state.dims, seed);
    } else {
      bases = pin->bases;
    }

    CriterionSpec spec;
    if (pin) spec = pin->criteria.front();
    if (!pin || active->get_option("--criterion")->count() > 0 ||
        config.doc.contains("criterion")) {
      spec.id = criterion_from_string(criterion_name);
      if (!pin) spec.coeffs = TripartiteCoefficients{};
      spec.partition.reset();
    }
    if (!coeffs_text.empty()) spec.coeffs = parse_coeffs(coeffs_text);
    if (!partition_text.empty()) {
      spec.partition = PartitionSpec::parse(
          partition_text, static_cast<int>(state.dims.size()));
    }

    if (tensor_cmd->parsed()) {
      const CorrelationTensor t = correlation_tensor(state, bases);
      std::cout << tensor_to_csv(t);
      return kExitOk;
    }

    if (verdict_cmd->parsed()) {
      const CriterionReport report = evaluate_criterion(state, bases, spec);
      std::cout << report.to_json() << "\n";
      return kExitOk;
    }

    // scan
    if (!have_family) {
      throw InputError("scan needs --family (an example id or a named state)");
    }
    const GridSpec grid = parse_grid(grid_text);
    std::vector<std::string> competitors;
    if (!competitors_text.empty()) {
      std::stringstream in(competitors_text);
      std::string token;
      while (std::getline(in, token, ',')) competitors.push_back(token);
    }
    const ScanResult result = scan_threshold(
        family, bases, spec, grid.lo, grid.hi, grid.step, tol, competitors);
    std::cout << (format == "csv" ? result.to_csv() : result.to_json() + "\n");
    return kExitOk;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
