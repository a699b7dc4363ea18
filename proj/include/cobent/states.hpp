#pragma once

#include <string>
#include <vector>

#include "cobent/common.hpp"

namespace cobent {

/// An n-partite density matrix together with its subsystem dimensions.
/// Computational basis indices are big-endian over subsystems: the leftmost
/// ket factor is the most significant digit, so for dims (3,3,2) the flat
/// index of |a1 a2 a3> is a1*6 + a2*2 + a3.
struct DensityMatrix {
  std::vector<int> dims;
  ComplexMatrix matrix;

  int total_dim() const;
};

/// |psi><psi| from an amplitude vector. The vector is normalized if its norm
/// is within 1e-6 of 1, and rejected otherwise; a near-zero vector is an
/// InputError.
DensityMatrix pure_state(const ComplexVector& amplitudes,
                         std::vector<int> dims);

/// Named pure states: ghz3 (2,2,2), ghz4 (2,2,2,2), w4 (2,2,2,2),
/// example2_phi (3,3,2).
DensityMatrix named_state(const std::string& name);

enum class NoiseOrientation {
  noise_weight_x,  // rho(x) = (x/D) I + (1-x) |psi><psi|
  pure_weight_x,   // rho(x) = ((1-x)/D) I + x |psi><psi|
};

/// White-noise family around a fixed pure state.
struct NoisyStateFamily {
  DensityMatrix base;  // pure
  NoiseOrientation orientation = NoiseOrientation::pure_weight_x;
  std::string parameter_name = "x";

  DensityMatrix evaluate(double x) const;  // InputError unless x in [0,1]
};

NoisyStateFamily noisy_family(const std::string& base_state_name,
                              NoiseOrientation orientation);

/// JSON state file: {"dims": [...], "amplitudes": [[re,im],...]} for pure
/// states or {"dims": [...], "matrix": [[[re,im],...],...]} for mixed ones.
DensityMatrix load_state(const std::string& path);
void save_state(const DensityMatrix& state, const std::string& path);

}  // namespace cobent
