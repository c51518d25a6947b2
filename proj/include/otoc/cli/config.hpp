#pragma once

// Run configuration. The file is YAML with five top-level blocks, all keys
// fixed; unknown keys are rejected.
//
//   system:   n_sites, hamiltonian (xy_chain | custom), couplings, fields,
//             initial_state (all_up | neel | maximally_mixed)
//   otoc:     i, a, j, b, and either times: [...] or t_start/t_stop/t_points
//   sampling: n_shots, seed, n_repeats
//   angles:   theta1, theta2, theta3
//   dressing: laser_rabi, laser_detuning, microwave_rabi, microwave_detuning,
//             c6, c3, r_min, r_max, r_points, microwave, microwave_search
//   verify:   instances, seed
//
// Custom couplings are lists of {i, a, j, b, value}; fields are lists of
// {site, axis, value}.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otoc/dressing.hpp"
#include "otoc/dynamics.hpp"
#include "otoc/otoc_core.hpp"
#include "otoc/protocol.hpp"
#include "otoc/sampling.hpp"

namespace otoc::cli {

/// Invalid configuration; the message carries the line and field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class HamiltonianKind { xy_chain, custom };
enum class InitialStateKind { all_up, neel, maximally_mixed };

struct SystemBlock {
  int n_sites = 0;
  HamiltonianKind hamiltonian = HamiltonianKind::xy_chain;
  std::vector<PairCoupling> couplings;
  std::vector<LocalField> fields;
  InitialStateKind initial_state = InitialStateKind::all_up;
};

struct OtocBlock {
  OtocSpec spec{SiteIndex(1), PauliAxis::x, SiteIndex(2), PauliAxis::x};
  std::vector<double> times;
};

struct DressingBlock {
  dressing::LevelScheme scheme;
  dressing::InteractionCoefficients coeffs;
  double r_min = 1.5;
  double r_max = 12.0;
  int r_points = 211;
  bool microwave = true;
  /// Replace the microwave settings by the documented grid search result.
  bool microwave_search = false;
};

struct VerifyBlock {
  int instances = 200;
  std::uint64_t seed = 2024;
};

struct RunConfig {
  std::optional<SystemBlock> system;
  std::optional<OtocBlock> otoc;
  std::optional<SampleConfig> sampling;
  RotationAngles angles = RotationAngles::optimal();
  std::optional<DressingBlock> dressing;
  VerifyBlock verify;
  /// FNV-1a 64 of the raw configuration text.
  std::uint64_t hash = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace otoc::cli
