#include "otoc/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <fmt/format.h>

#include "otoc/verification.hpp"

namespace otoc::cli {

namespace {

using InitialState = std::variant<StateVector, DensityOperator>;

const SystemBlock& need_system(const RunConfig& cfg) {
  if (!cfg.system) throw ConfigError("field 'system': block required");
  return *cfg.system;
}

const OtocBlock& need_otoc(const RunConfig& cfg) {
  if (!cfg.otoc) throw ConfigError("field 'otoc': block required");
  return *cfg.otoc;
}

const SampleConfig& need_sampling(const RunConfig& cfg) {
  if (!cfg.sampling) throw ConfigError("field 'sampling': block required");
  return *cfg.sampling;
}

Hamiltonian make_hamiltonian(const SystemBlock& s) {
  switch (s.hamiltonian) {
    case HamiltonianKind::xy_chain:
      return build_xy_chain(s.n_sites);
    case HamiltonianKind::custom:
      return build_custom(s.n_sites, s.couplings, s.fields);
  }
  throw ConfigError("field 'system.hamiltonian': unsupported kind");
}

InitialState make_state(const SystemBlock& s) {
  switch (s.initial_state) {
    case InitialStateKind::all_up:
      return all_up_vector(s.n_sites);
    case InitialStateKind::neel:
      return neel_vector(s.n_sites);
    case InitialStateKind::maximally_mixed:
      return maximally_mixed_state(s.n_sites);
  }
  throw ConfigError("field 'system.initial_state': unsupported kind");
}

struct Setup {
  Propagator prop;
  InitialState state;
  const OtocBlock& otoc;
};

Setup make_setup(const RunConfig& cfg) {
  const SystemBlock& s = need_system(cfg);
  const OtocBlock& o = need_otoc(cfg);
  return {Propagator(make_hamiltonian(s)), make_state(s), o};
}

ResultRow exact_row(const Setup& setup, double t) {
  cplx c = std::visit(
      [&](const auto& st) { return otoc_direct(st, setup.otoc.spec, setup.prop, t); },
      setup.state);
  ResultRow row;
  row.t = t;
  row.re_exact = c.real();
  row.im_exact = c.imag();
  return row;
}

std::string opt(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace

std::vector<ResultRow> run_exact(const RunConfig& cfg) {
  Setup setup = make_setup(cfg);
  std::vector<ResultRow> rows;
  for (double t : setup.otoc.times) {
    ResultRow row = exact_row(setup, t);
    std::visit(
        [&](const auto& st) {
          row.re_protocol =
              re_otoc_via_protocol(st, setup.otoc.spec, setup.prop, t);
          row.im_protocol = im_otoc_via_protocol(st, setup.otoc.spec,
                                                 setup.prop, t, cfg.angles);
        },
        setup.state);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_sampled(const RunConfig& cfg) {
  Setup setup = make_setup(cfg);
  const SampleConfig& base = need_sampling(cfg);
  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < setup.otoc.times.size(); ++k) {
    const double t = setup.otoc.times[k];
    ResultRow row = exact_row(setup, t);
    ProbabilityTable table = std::visit(
        [&](const auto& st) {
          return outcome_probabilities(st, setup.otoc.spec, setup.prop, t);
        },
        setup.state);
    SampleConfig point = base;
    point.seed = base.seed + static_cast<std::uint64_t>(k) *
                                 static_cast<std::uint64_t>(base.n_repeats);
    Estimate est = estimate_re_otoc(sample_sequences(table, point));
    row.re_estimate = est.value;
    row.re_stderr = est.std_error;
    if (base.n_repeats >= 2) row.re_band = error_band(table, point);
    row.n_shots = est.n_shots;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_im(const RunConfig& cfg) {
  Setup setup = make_setup(cfg);
  const SampleConfig& base = need_sampling(cfg);
  check_prefactor(cfg.angles);
  std::vector<ResultRow> rows;
  for (std::size_t k = 0; k < setup.otoc.times.size(); ++k) {
    const double t = setup.otoc.times[k];
    ResultRow row = exact_row(setup, t);
    SampleConfig point = base;
    point.seed = base.seed + static_cast<std::uint64_t>(k);
    Estimate est = std::visit(
        [&](const auto& st) {
          return sample_rotation_protocol(st, setup.otoc.spec, setup.prop, t,
                                          cfg.angles, point);
        },
        setup.state);
    row.im_estimate = est.value;
    row.im_stderr = est.std_error;
    row.n_shots = est.n_shots;
    rows.push_back(row);
  }
  return rows;
}

DressingResult run_dressing(const RunConfig& cfg) {
  if (!cfg.dressing) throw ConfigError("field 'dressing': block required");
  const DressingBlock& d = *cfg.dressing;
  DressingResult result;
  result.scheme = d.scheme;

  if (d.microwave_search) {
    auto grid = dressing::InversionSearchGrid::documented();
    grid.r_min = d.r_min;
    grid.r_max = d.r_max;
    grid.n_points = d.r_points;
    auto found = dressing::search_inversion(d.scheme, d.coeffs, grid);
    if (!found) {
      throw InvariantViolation("microwave search found no inversion window");
    }
    result.scheme = found->scheme;
  }

  dressing::DressedCurve off = dressing::scan_curve(
      result.scheme, d.coeffs, d.r_min, d.r_max, d.r_points, false);
  std::optional<dressing::DressedCurve> on;
  if (d.microwave) {
    on = dressing::scan_curve(result.scheme, d.coeffs, d.r_min, d.r_max,
                              d.r_points, true);
  }
  for (std::size_t k = 0; k < off.distances.size(); ++k) {
    DressingRow row{off.distances[k], off.j_values[k], std::nullopt};
    if (on) row.j_on = on->j_values[k];
    result.rows.push_back(row);
  }
  return result;
}

std::vector<VerifyRow> run_verify(const RunConfig& cfg) {
  const auto& v = cfg.verify;
  auto re = verification::check_real_identity(v.seed, v.instances);
  auto im = verification::check_imaginary_identity(v.seed + 1, v.instances);
  auto fn = verification::check_commutator_relation(
      v.seed + 2, std::max(1, v.instances / 2));
  return {{"real_part_projective", re.instances, re.max_residual, kIdentityTol},
          {"imag_part_rotation", im.instances, im.max_residual, kIdentityTol},
          {"squared_commutator", fn.instances, fn.max_residual, kIdentityTol}};
}

double max_identity_residual(const std::vector<ResultRow>& rows) {
  double worst = 0.0;
  for (const ResultRow& r : rows) {
    if (r.re_protocol) {
      worst = std::max(worst, std::abs(*r.re_protocol - r.re_exact));
    }
    if (r.im_protocol) {
      worst = std::max(worst, std::abs(*r.im_protocol - r.im_exact));
    }
  }
  return worst;
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  return fmt::format("{:.17g}", x);
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  out << "# otoc-sim " << kToolVersion << '\n';
  out << "# command: " << meta.command << '\n';
  out << fmt::format("# config_hash: fnv1a64:{:016x}\n", meta.config_hash);
  out << "# seed: " << (meta.seed ? std::to_string(*meta.seed) : "none")
      << '\n';
  out << "# generator: " << kGeneratorName << " v" << kGeneratorVersion
      << '\n';
}

void write_exact_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "t,re_exact,im_exact,re_protocol,im_protocol,re_residual,"
         "im_residual\n";
  for (const ResultRow& r : rows) {
    double re_res = r.re_protocol ? std::abs(*r.re_protocol - r.re_exact) : 0;
    double im_res = r.im_protocol ? std::abs(*r.im_protocol - r.im_exact) : 0;
    out << format_real(r.t) << ',' << format_real(r.re_exact) << ','
        << format_real(r.im_exact) << ',' << opt(r.re_protocol) << ','
        << opt(r.im_protocol) << ',' << format_real(re_res) << ','
        << format_real(im_res) << '\n';
  }
}

void write_sampled_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "t,re_exact,im_exact,re_estimate,re_stderr,re_band,n_shots\n";
  for (const ResultRow& r : rows) {
    out << format_real(r.t) << ',' << format_real(r.re_exact) << ','
        << format_real(r.im_exact) << ',' << opt(r.re_estimate) << ','
        << opt(r.re_stderr) << ',' << opt(r.re_band) << ','
        << (r.n_shots ? std::to_string(*r.n_shots) : "") << '\n';
  }
}

void write_im_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "t,re_exact,im_exact,im_estimate,im_stderr,n_shots\n";
  for (const ResultRow& r : rows) {
    out << format_real(r.t) << ',' << format_real(r.re_exact) << ','
        << format_real(r.im_exact) << ',' << opt(r.im_estimate) << ','
        << opt(r.im_stderr) << ','
        << (r.n_shots ? std::to_string(*r.n_shots) : "") << '\n';
  }
}

void write_dressing_csv(std::ostream& out, const DressingResult& result) {
  const auto& s = result.scheme;
  out << "# laser_rabi: " << format_real(s.laser_rabi) << '\n'
      << "# laser_detuning: " << format_real(s.laser_detuning) << '\n'
      << "# microwave_rabi: " << format_real(s.microwave_rabi) << '\n'
      << "# microwave_detuning: " << format_real(s.microwave_detuning)
      << '\n';
  const bool with_on = !result.rows.empty() && result.rows.front().j_on;
  out << (with_on ? "r,j_off,j_on,inverted\n" : "r,j_off\n");
  for (const DressingRow& row : result.rows) {
    out << format_real(row.r) << ',' << format_real(row.j_off);
    if (with_on) {
      out << ',' << format_real(*row.j_on) << ','
          << (row.j_off * *row.j_on < 0.0 ? "true" : "false");
    }
    out << '\n';
  }
}

void write_verify_csv(std::ostream& out, const std::vector<VerifyRow>& rows) {
  out << "identity,instances,max_residual,tolerance,pass\n";
  for (const VerifyRow& r : rows) {
    out << r.identity << ',' << r.instances << ','
        << format_real(r.max_residual) << ',' << format_real(r.tolerance)
        << ',' << (r.pass() ? "true" : "false") << '\n';
  }
}

int run_command(const std::string& command, RunConfig cfg,
                const RunOptions& options, std::ostream& out,
                std::ostream& log) {
  try {
    if (options.seed_override) {
      if (cfg.sampling) cfg.sampling->seed = *options.seed_override;
      cfg.verify.seed = *options.seed_override;
    }
    Metadata meta{command, cfg.hash, std::nullopt};
    if (cfg.sampling && (command == "sample" || command == "im")) {
      meta.seed = cfg.sampling->seed;
    } else if (command == "verify") {
      meta.seed = cfg.verify.seed;
    }

    if (command == "exact") {
      auto rows = run_exact(cfg);
      write_metadata(out, meta);
      write_exact_csv(out, rows);
      double residual = max_identity_residual(rows);
      if (!options.quiet) {
        log << fmt::format("max identity residual {:.3e}\n", residual);
      }
      if (!(residual < kIdentityTol)) {
        log << "identity residual above tolerance " << kIdentityTol << '\n';
        return kExitInvariant;
      }
    } else if (command == "sample") {
      auto rows = run_sampled(cfg);
      write_metadata(out, meta);
      write_sampled_csv(out, rows);
    } else if (command == "im") {
      auto rows = run_im(cfg);
      write_metadata(out, meta);
      write_im_csv(out, rows);
    } else if (command == "dressing") {
      auto result = run_dressing(cfg);
      write_metadata(out, meta);
      write_dressing_csv(out, result);
    } else if (command == "verify") {
      auto rows = run_verify(cfg);
      write_metadata(out, meta);
      write_verify_csv(out, rows);
      bool ok = std::all_of(rows.begin(), rows.end(),
                            [](const VerifyRow& r) { return r.pass(); });
      if (!options.quiet) {
        for (const auto& r : rows) {
          log << fmt::format("{:<22} max residual {:.3e} ({})\n", r.identity,
                             r.max_residual, r.pass() ? "ok" : "FAIL");
        }
      }
      if (!ok) return kExitInvariant;
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace otoc::cli
