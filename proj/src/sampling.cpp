#include "otoc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace otoc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed + stream)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

void SampleConfig::check() const {
  if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
  if (n_repeats < 1) throw std::invalid_argument("n_repeats must be >= 1");
}

OutcomeCounts sample_sequences(const ProbabilityTable& table,
                               std::int64_t n_shots, Rng& rng) {
  if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
  constexpr std::size_t n = OutcomeSequence::kCount;
  std::array<double, n> cdf{};
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += table.at(k);
    cdf[k] = acc;
    if (table.at(k) > 0.0) last_nonzero = k;
  }

  OutcomeCounts counts{};
  for (std::int64_t shot = 0; shot < n_shots; ++shot) {
    double u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t k = it == cdf.end()
                        ? last_nonzero
                        : static_cast<std::size_t>(it - cdf.begin());
    // Zero-probability categories share their cdf value with a predecessor
    // and are never selected by upper_bound.
    ++counts[k];
  }
  return counts;
}

OutcomeCounts sample_sequences(const ProbabilityTable& table,
                               const SampleConfig& cfg) {
  cfg.check();
  Rng rng(cfg.seed, 0);
  return sample_sequences(table, cfg.n_shots, rng);
}

Estimate estimate_re_otoc(const OutcomeCounts& counts) {
  std::int64_t total = 0;
  std::int64_t signed_sum = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 0) throw std::invalid_argument("negative outcome count");
    total += counts[k];
    signed_sum += OutcomeSequence::from_index(k).product() * counts[k];
  }
  if (total < 1) throw std::invalid_argument("no shots recorded");

  const double n = static_cast<double>(total);
  const double mean = static_cast<double>(signed_sum) / n;
  double sd = 0.0;
  if (total > 1) {
    // per-shot values are +-1: sum (x - mean)^2 = n (1 - mean^2)
    double ss = std::max(0.0, n * (1.0 - mean * mean));
    sd = std::sqrt(ss / (n - 1.0));
  }
  return {2.0 * mean - 1.0, 2.0 * sd / std::sqrt(n), total};
}

double error_band(const ProbabilityTable& table, const SampleConfig& cfg) {
  cfg.check();
  if (cfg.n_repeats < 2) {
    throw std::invalid_argument("error band needs n_repeats >= 2");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(cfg.n_repeats));
  for (std::int64_t r = 0; r < cfg.n_repeats; ++r) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(r));
    values.push_back(
        estimate_re_otoc(sample_sequences(table, cfg.n_shots, rng)).value);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

Estimate sample_rotation_readouts(const std::array<double, 4>& expectations,
                                  const RotationAngles& angles,
                                  std::int64_t n_shots, Rng& rng) {
  check_prefactor(angles);
  if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
  const double n = static_cast<double>(n_shots);
  double combo = 0.0;
  double variance = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double p_up = std::clamp(0.5 * (1.0 + expectations[k]), 0.0, 1.0);
    std::int64_t ups = 0;
    for (std::int64_t shot = 0; shot < n_shots; ++shot) {
      if (rng.uniform() < p_up) ++ups;
    }
    double mean = (2.0 * static_cast<double>(ups) - n) / n;
    combo += kAngleSetSigns[k] * mean;
    if (n_shots > 1) {
      double s2 = std::max(0.0, n * (1.0 - mean * mean) / (n - 1.0));
      variance += s2 / n;
    }
  }
  double pref = imaginary_prefactor(angles);
  return {combo / pref, std::sqrt(variance) / std::abs(pref), n_shots};
}

namespace {

template <class State>
Estimate rotation_protocol(const State& state, const OtocSpec& spec,
                           const Propagator& prop, double t,
                           const RotationAngles& angles,
                           const SampleConfig& cfg) {
  cfg.check();
  check_prefactor(angles);
  auto sets = angle_sets(angles);
  std::array<double, 4> e{};
  for (std::size_t k = 0; k < 4; ++k) {
    e[k] = rotated_expectation(state, spec, prop, t, sets[k]);
  }
  Rng rng(cfg.seed, 0);
  return sample_rotation_readouts(e, angles, cfg.n_shots, rng);
}

}  // namespace

Estimate sample_rotation_protocol(const DensityOperator& rho,
                                  const OtocSpec& spec, const Propagator& prop,
                                  double t, const RotationAngles& angles,
                                  const SampleConfig& cfg) {
  return rotation_protocol(rho, spec, prop, t, angles, cfg);
}

Estimate sample_rotation_protocol(const StateVector& psi, const OtocSpec& spec,
                                  const Propagator& prop, double t,
                                  const RotationAngles& angles,
                                  const SampleConfig& cfg) {
  return rotation_protocol(psi, spec, prop, t, angles, cfg);
}

}  // namespace otoc
