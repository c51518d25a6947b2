#pragma once

// Experiment runner behind the otoc-sim executable. Each command returns its
// rows; write_* renders them as CSV with a '#' metadata header (tool version,
// command, config hash, seed, generator), comma separators, '.' decimals,
// 17 significant digits and LF line endings.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "otoc/cli/config.hpp"

namespace otoc::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;

/// Identity residuals above this value make `exact` exit with kExitInvariant.
inline constexpr double kIdentityTol = 1e-9;

struct ResultRow {
  double t = 0.0;
  double re_exact = 0.0;
  double im_exact = 0.0;
  std::optional<double> re_protocol;
  std::optional<double> im_protocol;
  std::optional<double> re_estimate;
  std::optional<double> re_stderr;
  std::optional<double> re_band;
  std::optional<double> im_estimate;
  std::optional<double> im_stderr;
  std::optional<std::int64_t> n_shots;
};

struct DressingRow {
  double r = 0.0;
  double j_off = 0.0;
  std::optional<double> j_on;
};

struct DressingResult {
  dressing::LevelScheme scheme;  // microwave settings actually used
  std::vector<DressingRow> rows;
};

struct VerifyRow {
  std::string identity;
  int instances = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_residual < tolerance; }
};

/// Thrown when a command's own invariant check fails (exit code 3).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact OTOC plus both protocol reconstructions per time point.
std::vector<ResultRow> run_exact(const RunConfig& cfg);
/// Exact values plus the projective-protocol estimate, its standard error
/// and the error band over n_repeats (when n_repeats >= 2). Time point k
/// uses seed + k * n_repeats as its base seed.
std::vector<ResultRow> run_sampled(const RunConfig& cfg);
/// Exact values plus the rotation-protocol estimate of Im C. Time point k
/// uses seed + k as its seed.
std::vector<ResultRow> run_im(const RunConfig& cfg);
DressingResult run_dressing(const RunConfig& cfg);
std::vector<VerifyRow> run_verify(const RunConfig& cfg);

/// Largest |re_protocol - re_exact| and |im_protocol - im_exact|.
double max_identity_residual(const std::vector<ResultRow>& rows);

std::string format_real(double x);

struct Metadata {
  std::string command;
  std::uint64_t config_hash = 0;
  std::optional<std::uint64_t> seed;
};

void write_metadata(std::ostream& out, const Metadata& meta);
void write_exact_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_sampled_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_im_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_dressing_csv(std::ostream& out, const DressingResult& result);
void write_verify_csv(std::ostream& out, const std::vector<VerifyRow>& rows);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;
};

/// Runs `command` on `cfg`, writes the CSV (metadata first) to `out` and
/// diagnostics to `log`. Returns the process exit code.
int run_command(const std::string& command, RunConfig cfg,
                const RunOptions& options, std::ostream& out,
                std::ostream& log);

}  // namespace otoc::cli
