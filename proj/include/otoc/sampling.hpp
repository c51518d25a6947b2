#pragma once

// Finite-shot simulation of the measurement protocols.
//
// Random numbers: std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) seeded with splitmix64(seed + stream), uniform doubles taken
// from the top 53 bits. Stream k of a configuration serves repeat k.
// Outcome sequences are drawn shot by shot by inverse CDF over the 16
// sequences in index order, so one shot consumes exactly one uniform.

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "otoc/protocol.hpp"

namespace otoc {

inline constexpr std::string_view kGeneratorName =
    "mt19937_64/splitmix64-seeded/u53";
inline constexpr std::string_view kGeneratorVersion = "1";

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct SampleConfig {
  std::int64_t n_shots = 1000;
  std::uint64_t seed = 0;
  std::int64_t n_repeats = 100;

  /// Throws std::invalid_argument unless n_shots >= 1 and n_repeats >= 1.
  void check() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_shots = 0;
};

using OutcomeCounts = std::array<std::int64_t, OutcomeSequence::kCount>;

/// Draws n_shots sequences from `rng`.
OutcomeCounts sample_sequences(const ProbabilityTable& table,
                               std::int64_t n_shots, Rng& rng);
/// Draws cfg.n_shots sequences from stream 0 of cfg.seed.
OutcomeCounts sample_sequences(const ProbabilityTable& table,
                               const SampleConfig& cfg);

/// value = 2 * mean(o1 o2 o3 o4) - 1; stderr = 2 s / sqrt(N_s) with s the
/// sample standard deviation of the per-shot product.
Estimate estimate_re_otoc(const OutcomeCounts& counts);

/// Standard deviation of n_repeats independent estimates of 2 corr - 1,
/// repeat k drawn from stream k. Requires n_repeats >= 2.
double error_band(const ProbabilityTable& table, const SampleConfig& cfg);

/// Simulates cfg.n_shots single-shot sigma_i^a readouts for each of the four
/// angle sets (stream 0 of cfg.seed, sets drawn in combination order) and
/// combines the empirical means into an estimate of Im C.
Estimate sample_rotation_protocol(const DensityOperator& rho,
                                  const OtocSpec& spec, const Propagator& prop,
                                  double t, const RotationAngles& angles,
                                  const SampleConfig& cfg);
Estimate sample_rotation_protocol(const StateVector& psi, const OtocSpec& spec,
                                  const Propagator& prop, double t,
                                  const RotationAngles& angles,
                                  const SampleConfig& cfg);

/// The shot-level half of sample_rotation_protocol: given the four exact
/// expectations, draws the readouts and combines them.
Estimate sample_rotation_readouts(const std::array<double, 4>& expectations,
                                  const RotationAngles& angles,
                                  std::int64_t n_shots, Rng& rng);

}  // namespace otoc
