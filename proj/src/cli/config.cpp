#include "otoc/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace otoc::cli {

namespace {

std::string where(const YAML::Node& node, const std::string& field) {
  std::string s;
  if (node && !node.Mark().is_null()) {
    s = "line " + std::to_string(node.Mark().line + 1) + ": ";
  }
  return s + "field '" + field + "'";
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                       const std::string& message) {
  throw ConfigError(where(node, field) + ": " + message);
}

void require_map(const YAML::Node& node, const std::string& field) {
  if (!node.IsMap()) fail(node, field, "expected a mapping");
}

void reject_unknown(const YAML::Node& node, const std::string& prefix,
                    const std::set<std::string>& allowed) {
  for (const auto& kv : node) {
    auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      fail(kv.first, prefix.empty() ? key : prefix + "." + key,
           "unknown key");
    }
  }
}

template <class T>
T scalar(const YAML::Node& parent, const std::string& key,
         const std::string& field) {
  YAML::Node node = parent[key];
  if (!node) fail(parent, field, "missing required key");
  if (!node.IsScalar()) fail(node, field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::BadConversion&) {
    fail(node, field, "cannot convert '" + node.Scalar() + "'");
  }
}

template <class T>
T scalar_or(const YAML::Node& parent, const std::string& key,
            const std::string& field, T fallback) {
  if (!parent[key]) return fallback;
  return scalar<T>(parent, key, field);
}

double finite(const YAML::Node& parent, const std::string& key,
              const std::string& field) {
  auto v = scalar<double>(parent, key, field);
  if (!std::isfinite(v)) fail(parent[key], field, "must be finite");
  return v;
}

PauliAxis axis(const YAML::Node& parent, const std::string& key,
               const std::string& field) {
  auto s = scalar<std::string>(parent, key, field);
  if (s.size() != 1 || s.find_first_of("xyz") != 0) {
    fail(parent[key], field, "axis must be x, y or z");
  }
  return parse_axis(s[0]);
}

SiteIndex site(const YAML::Node& parent, const std::string& key,
               const std::string& field, int n_sites) {
  int v = scalar<int>(parent, key, field);
  if (v < 1 || v > n_sites) {
    fail(parent[key], field,
         "site " + std::to_string(v) + " outside 1.." +
             std::to_string(n_sites));
  }
  return SiteIndex(v);
}

SystemBlock parse_system(const YAML::Node& node) {
  require_map(node, "system");
  reject_unknown(node, "system",
                 {"n_sites", "hamiltonian", "couplings", "fields",
                  "initial_state"});
  SystemBlock s;
  s.n_sites = scalar<int>(node, "n_sites", "system.n_sites");
  if (s.n_sites < 2 || s.n_sites > kMaxSites) {
    fail(node["n_sites"], "system.n_sites",
         "must lie in [2, " + std::to_string(kMaxSites) + "]");
  }

  auto kind = scalar_or<std::string>(node, "hamiltonian", "system.hamiltonian",
                                     "xy_chain");
  if (kind == "xy_chain") {
    s.hamiltonian = HamiltonianKind::xy_chain;
  } else if (kind == "custom") {
    s.hamiltonian = HamiltonianKind::custom;
  } else {
    fail(node["hamiltonian"], "system.hamiltonian",
         "expected xy_chain or custom");
  }
  if (s.hamiltonian == HamiltonianKind::xy_chain &&
      (node["couplings"] || node["fields"])) {
    fail(node, "system.couplings",
         "couplings/fields require hamiltonian: custom");
  }

  if (YAML::Node list = node["couplings"]) {
    if (!list.IsSequence()) fail(list, "system.couplings", "expected a list");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const YAML::Node c = list[k];
      std::string f = "system.couplings[" + std::to_string(k) + "]";
      require_map(c, f);
      reject_unknown(c, f, {"i", "a", "j", "b", "value"});
      PairCoupling p{site(c, "i", f + ".i", s.n_sites), axis(c, "a", f + ".a"),
                     site(c, "j", f + ".j", s.n_sites), axis(c, "b", f + ".b"),
                     finite(c, "value", f + ".value")};
      if (p.i == p.j) fail(c, f, "coupling needs two distinct sites");
      s.couplings.push_back(p);
    }
  }
  if (YAML::Node list = node["fields"]) {
    if (!list.IsSequence()) fail(list, "system.fields", "expected a list");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const YAML::Node c = list[k];
      std::string f = "system.fields[" + std::to_string(k) + "]";
      require_map(c, f);
      reject_unknown(c, f, {"site", "axis", "value"});
      s.fields.push_back({site(c, "site", f + ".site", s.n_sites),
                          axis(c, "axis", f + ".axis"),
                          finite(c, "value", f + ".value")});
    }
  }

  auto init = scalar_or<std::string>(node, "initial_state",
                                     "system.initial_state", "all_up");
  if (init == "all_up") {
    s.initial_state = InitialStateKind::all_up;
  } else if (init == "neel") {
    s.initial_state = InitialStateKind::neel;
  } else if (init == "maximally_mixed") {
    s.initial_state = InitialStateKind::maximally_mixed;
  } else {
    fail(node["initial_state"], "system.initial_state",
         "expected all_up, neel or maximally_mixed");
  }
  return s;
}

OtocBlock parse_otoc(const YAML::Node& node, int n_sites) {
  require_map(node, "otoc");
  reject_unknown(node, "otoc",
                 {"i", "a", "j", "b", "times", "t_start", "t_stop",
                  "t_points"});
  OtocBlock o;
  o.spec = {site(node, "i", "otoc.i", n_sites), axis(node, "a", "otoc.a"),
            site(node, "j", "otoc.j", n_sites), axis(node, "b", "otoc.b")};

  const bool listed = static_cast<bool>(node["times"]);
  const bool ranged = node["t_start"] || node["t_stop"] || node["t_points"];
  if (listed == ranged) {
    fail(node, "otoc.times",
         "give either times or t_start/t_stop/t_points, not both");
  }
  if (listed) {
    YAML::Node list = node["times"];
    if (!list.IsSequence() || list.size() == 0) {
      fail(list, "otoc.times", "expected a non-empty list");
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::string f = "otoc.times[" + std::to_string(k) + "]";
      if (!list[k].IsScalar()) fail(list[k], f, "expected a number");
      double v = 0.0;
      try {
        v = list[k].as<double>();
      } catch (const YAML::BadConversion&) {
        fail(list[k], f, "cannot convert '" + list[k].Scalar() + "'");
      }
      if (!std::isfinite(v)) fail(list[k], f, "must be finite");
      o.times.push_back(v);
    }
  } else {
    double t0 = finite(node, "t_start", "otoc.t_start");
    double t1 = finite(node, "t_stop", "otoc.t_stop");
    int n = scalar<int>(node, "t_points", "otoc.t_points");
    if (n < 1) fail(node["t_points"], "otoc.t_points", "must be >= 1");
    if (n == 1) {
      o.times.push_back(t0);
    } else {
      for (int k = 0; k < n; ++k) {
        o.times.push_back(k + 1 == n ? t1 : t0 + (t1 - t0) * k / (n - 1));
      }
    }
  }
  for (std::size_t k = 1; k < o.times.size(); ++k) {
    if (!(o.times[k] > o.times[k - 1])) {
      fail(node, "otoc.times", "time grid must be strictly increasing");
    }
  }
  return o;
}

SampleConfig parse_sampling(const YAML::Node& node) {
  require_map(node, "sampling");
  reject_unknown(node, "sampling", {"n_shots", "seed", "n_repeats"});
  SampleConfig c;
  c.n_shots = scalar<std::int64_t>(node, "n_shots", "sampling.n_shots");
  c.seed = scalar<std::uint64_t>(node, "seed", "sampling.seed");
  c.n_repeats = scalar_or<std::int64_t>(node, "n_repeats",
                                        "sampling.n_repeats", 100);
  if (c.n_shots < 1) fail(node["n_shots"], "sampling.n_shots", "must be >= 1");
  if (c.n_repeats < 1) {
    fail(node["n_repeats"], "sampling.n_repeats", "must be >= 1");
  }
  return c;
}

RotationAngles parse_angles(const YAML::Node& node) {
  require_map(node, "angles");
  reject_unknown(node, "angles", {"theta1", "theta2", "theta3"});
  RotationAngles a{finite(node, "theta1", "angles.theta1"),
                   finite(node, "theta2", "angles.theta2"),
                   finite(node, "theta3", "angles.theta3")};
  if (!(std::abs(imaginary_prefactor(a)) > kPrefactorGuard)) {
    fail(node, "angles", "degenerate angles: prefactor vanishes");
  }
  return a;
}

DressingBlock parse_dressing(const YAML::Node& node) {
  require_map(node, "dressing");
  reject_unknown(node, "dressing",
                 {"laser_rabi", "laser_detuning", "microwave_rabi",
                  "microwave_detuning", "c6", "c3", "r_min", "r_max",
                  "r_points", "microwave", "microwave_search"});
  DressingBlock d;
  d.microwave_search = scalar_or<bool>(node, "microwave_search",
                                       "dressing.microwave_search", false);
  d.microwave = scalar_or<bool>(node, "microwave", "dressing.microwave", true);
  d.scheme.laser_rabi = finite(node, "laser_rabi", "dressing.laser_rabi");
  d.scheme.laser_detuning =
      finite(node, "laser_detuning", "dressing.laser_detuning");
  if (!d.microwave_search) {
    d.scheme.microwave_rabi =
        finite(node, "microwave_rabi", "dressing.microwave_rabi");
    d.scheme.microwave_detuning =
        finite(node, "microwave_detuning", "dressing.microwave_detuning");
  } else if (node["microwave_rabi"] || node["microwave_detuning"]) {
    fail(node, "dressing.microwave_search",
         "microwave_rabi/microwave_detuning conflict with microwave_search");
  }
  if (d.scheme.laser_rabi < 0.0) {
    fail(node["laser_rabi"], "dressing.laser_rabi", "must be >= 0");
  }
  if (d.scheme.microwave_rabi < 0.0) {
    fail(node["microwave_rabi"], "dressing.microwave_rabi", "must be >= 0");
  }
  d.coeffs.c6 = finite(node, "c6", "dressing.c6");
  d.coeffs.c3 = finite(node, "c3", "dressing.c3");
  d.r_min = finite(node, "r_min", "dressing.r_min");
  d.r_max = finite(node, "r_max", "dressing.r_max");
  d.r_points = scalar<int>(node, "r_points", "dressing.r_points");
  if (!(d.r_min > 0.0 && d.r_max > d.r_min)) {
    fail(node, "dressing.r_min", "need 0 < r_min < r_max");
  }
  if (d.r_points < 2) {
    fail(node["r_points"], "dressing.r_points", "must be >= 2");
  }
  return d;
}

VerifyBlock parse_verify(const YAML::Node& node) {
  require_map(node, "verify");
  reject_unknown(node, "verify", {"instances", "seed"});
  VerifyBlock v;
  v.instances = scalar_or<int>(node, "instances", "verify.instances", 200);
  v.seed = scalar_or<std::uint64_t>(node, "seed", "verify.seed", 2024);
  if (v.instances < 1) {
    fail(node["instances"], "verify.instances", "must be >= 1");
  }
  return v;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) +
                      ": malformed configuration: " + e.msg);
  }
  RunConfig cfg;
  cfg.hash = fnv1a64(text);
  if (root.IsNull()) return cfg;
  require_map(root, "<root>");
  reject_unknown(root, "",
                 {"system", "otoc", "sampling", "angles", "dressing",
                  "verify"});

  if (root["system"]) cfg.system = parse_system(root["system"]);
  if (root["otoc"]) {
    if (!cfg.system) fail(root["otoc"], "otoc", "requires a system block");
    cfg.otoc = parse_otoc(root["otoc"], cfg.system->n_sites);
  }
  if (root["sampling"]) cfg.sampling = parse_sampling(root["sampling"]);
  if (root["angles"]) cfg.angles = parse_angles(root["angles"]);
  if (root["dressing"]) cfg.dressing = parse_dressing(root["dressing"]);
  if (root["verify"]) cfg.verify = parse_verify(root["verify"]);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace otoc::cli
