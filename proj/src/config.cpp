#include "pampa/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#ifndef PAMPA_PRESET_DIR
#define PAMPA_PRESET_DIR "presets"
#endif

namespace pampa {

SystemKind parse_system_kind(std::string_view name) {
  if (name == "advection") return SystemKind::advection;
  if (name == "burgers") return SystemKind::burgers;
  if (name == "euler") return SystemKind::euler;
  if (name == "mhd") return SystemKind::mhd;
  throw ConfigError("unknown system '" + std::string(name) + "'");
}

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::advection: return "advection";
    case SystemKind::burgers: return "burgers";
    case SystemKind::euler: return "euler";
    case SystemKind::mhd: return "mhd";
  }
  return "?";
}

namespace {

NodeRule parse_node_rule(const std::string& s) {
  if (s == "left") return NodeRule::left;
  if (s == "right") return NodeRule::right;
  if (s == "mean") return NodeRule::mean;
  throw ConfigError("node_at_break must be left, right or mean, got '" + s + "'");
}

const char* node_rule_name(NodeRule r) {
  switch (r) {
    case NodeRule::left: return "left";
    case NodeRule::right: return "right";
    case NodeRule::mean: return "mean";
  }
  return "?";
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Piece parse_piece(const YAML::Node& node) {
  check_keys(node, {"state", "function"}, "initial.pieces");
  Piece p;
  if (node["state"]) p.state = node["state"].as<std::vector<double>>();
  if (node["function"]) p.function = node["function"].as<std::string>();
  if (p.state.empty() == p.function.empty())
    throw ConfigError("each piece needs exactly one of 'state' or 'function'");
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  check_keys(root,
             {"name", "system", "domain", "cells", "boundary", "initial", "time", "limiter",
              "point_variables", "exact", "reference", "output"},
             "config");
  RunConfig cfg;
  cfg.name = get<std::string>(root, "name", cfg.name);

  if (const auto sys = root["system"]) {
    check_keys(sys, {"kind", "gamma", "rho_ref", "bounds", "speed", "bx"}, "system");
    cfg.system.kind = parse_system_kind(get<std::string>(sys, "kind", "advection"));
    cfg.system.gamma = get<double>(sys, "gamma", cfg.system.gamma);
    cfg.system.rho_ref = get<double>(sys, "rho_ref", cfg.system.rho_ref);
    cfg.system.speed = get<double>(sys, "speed", cfg.system.speed);
    cfg.system.bx = get<double>(sys, "bx", cfg.system.bx);
    if (sys["bounds"]) {
      const auto b = sys["bounds"].as<std::vector<double>>();
      if (b.size() != 2) throw ConfigError("system.bounds needs two values");
      cfg.system.lower = b[0];
      cfg.system.upper = b[1];
    }
  } else {
    throw ConfigError("config needs a 'system' section");
  }
  const bool scalar =
      cfg.system.kind == SystemKind::advection || cfg.system.kind == SystemKind::burgers;

  if (!root["domain"]) throw ConfigError("config needs 'domain: [a, b]'");
  const auto dom = root["domain"].as<std::vector<double>>();
  if (dom.size() != 2) throw ConfigError("domain needs two values");
  cfg.a = dom[0];
  cfg.b = dom[1];
  cfg.cells = get<int>(root, "cells", cfg.cells);
  cfg.boundary = parse_boundary(get<std::string>(root, "boundary", "periodic"));

  if (const auto t = root["time"]) {
    check_keys(t, {"final", "integrator", "cfl"}, "time");
    cfg.t_final = get<double>(t, "final", cfg.t_final);
    cfg.integrator = parse_integrator(get<std::string>(t, "integrator", scalar ? "ssp_ms3" : "ssp_rk3"));
    cfg.cfl = get<double>(t, "cfl", cfg.cfl);
  } else {
    cfg.integrator = scalar ? IntegratorKind::ssp_ms3 : IntegratorKind::ssp_rk3;
  }

  if (const auto lim = root["limiter"]) {
    check_keys(lim, {"idp", "oscillation", "mp_alpha", "mp_beta", "floors"}, "limiter");
    cfg.scheme.idp = get<bool>(lim, "idp", true);
    cfg.scheme.oscillation = parse_oscillation(get<std::string>(lim, "oscillation", "none"));
    cfg.scheme.mp.alpha = get<double>(lim, "mp_alpha", cfg.scheme.mp.alpha);
    cfg.scheme.mp.beta = get<double>(lim, "mp_beta", cfg.scheme.mp.beta);
    cfg.scheme.floor_cap = get<double>(lim, "floors", cfg.scheme.floor_cap);
  }
  cfg.scheme.point_variables =
      parse_point_variables(get<std::string>(root, "point_variables", "automatic_idp"));

  if (const auto ini = root["initial"]) {
    check_keys(ini, {"breaks", "pieces", "node_at_break", "quadrature_breaks", "energy_spike"},
               "initial");
    if (ini["breaks"]) cfg.initial.breaks = ini["breaks"].as<std::vector<double>>();
    if (ini["quadrature_breaks"])
      cfg.initial.quadrature_breaks = ini["quadrature_breaks"].as<std::vector<double>>();
    if (!ini["pieces"] || !ini["pieces"].IsSequence())
      throw ConfigError("initial.pieces must be a list");
    for (const auto& p : ini["pieces"]) cfg.initial.pieces.push_back(parse_piece(p));
    if (ini["node_at_break"]) {
      for (const auto& s : ini["node_at_break"].as<std::vector<std::string>>())
        cfg.initial.node_at_break.push_back(parse_node_rule(s));
    } else {
      cfg.initial.node_at_break.assign(cfg.initial.breaks.size(), NodeRule::mean);
    }
    if (const auto sp = ini["energy_spike"]) {
      check_keys(sp, {"amount", "scale"}, "initial.energy_spike");
      cfg.initial.spike.enabled = true;
      cfg.initial.spike.amount = get<double>(sp, "amount", 0.0);
      const auto scale = get<std::string>(sp, "scale", "times_dx");
      if (scale == "times_dx") {
        cfg.initial.spike.per_dx = false;
      } else if (scale == "per_dx") {
        cfg.initial.spike.per_dx = true;
      } else {
        throw ConfigError("energy_spike.scale must be times_dx or per_dx");
      }
    }
  } else {
    throw ConfigError("config needs an 'initial' section");
  }

  if (const auto ex = root["exact"]) {
    if (ex.IsScalar()) {
      cfg.exact = ex.as<std::string>();
    } else {
      check_keys(ex, {"kind", "speed"}, "exact");
      cfg.exact = get<std::string>(ex, "kind", "");
      cfg.exact_speed = get<double>(ex, "speed", cfg.exact_speed);
    }
  }
  if (const auto ref = root["reference"]) {
    check_keys(ref, {"cells", "cfl"}, "reference");
    cfg.reference_cells = get<int>(ref, "cells", 0);
    cfg.reference_cfl = get<double>(ref, "cfl", cfg.reference_cfl);
  }
  if (const auto out = root["output"]) {
    check_keys(out, {"dir", "snapshots", "svg"}, "output");
    cfg.out_dir = get<std::string>(out, "dir", cfg.out_dir);
    cfg.snapshots = get<int>(out, "snapshots", 0);
    cfg.svg = get<bool>(out, "svg", true);
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const bool scalar =
      cfg.system.kind == SystemKind::advection || cfg.system.kind == SystemKind::burgers;
  if (!(cfg.a < cfg.b)) throw ConfigError("domain must satisfy a < b");
  if (cfg.cells < 3) throw ConfigError("at least 3 cells are required");
  if (!(cfg.t_final > 0.0)) throw ConfigError("time.final must be positive");
  if (!(cfg.cfl > 0.0) || cfg.cfl > kMaxCfl) throw ConfigError("time.cfl must lie in (0, 1/6]");
  if (scalar && cfg.boundary == BoundaryKind::reflective)
    throw ConfigError("reflective boundaries need a system with a velocity component");
  if (scalar && !(cfg.system.lower < cfg.system.upper))
    throw ConfigError("system.bounds must satisfy lower < upper");
  if (!(cfg.scheme.floor_cap > 0.0)) throw ConfigError("limiter.floors must be positive");
  const auto& ini = cfg.initial;
  if (ini.pieces.size() != ini.breaks.size() + 1)
    throw ConfigError("initial.pieces needs one more entry than initial.breaks");
  if (ini.node_at_break.size() != ini.breaks.size())
    throw ConfigError("initial.node_at_break needs one entry per break");
  if (!std::is_sorted(ini.breaks.begin(), ini.breaks.end()))
    throw ConfigError("initial.breaks must be increasing");
  const std::size_t dim = scalar ? 1 : cfg.system.kind == SystemKind::euler ? 3 : 7;
  for (const auto& p : ini.pieces)
    if (!p.state.empty() && p.state.size() != dim)
      throw ConfigError("piece state has " + std::to_string(p.state.size()) +
                        " entries, expected " + std::to_string(dim));
  if (ini.spike.enabled && cfg.system.kind != SystemKind::euler)
    throw ConfigError("energy_spike is only defined for the Euler system");
  if (!cfg.exact.empty() && cfg.exact != "translate")
    throw ConfigError("exact must be empty or 'translate'");
  if (cfg.snapshots < 0) throw ConfigError("output.snapshots must be >= 0");
  if (cfg.reference_cells < 0) throw ConfigError("reference.cells must be >= 0");
  if (!(cfg.reference_cfl > 0.0) || cfg.reference_cfl > 1.0)
    throw ConfigError("reference.cfl must lie in (0, 1]");
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::filesystem::path preset_directory() {
  if (const char* env = std::getenv("PAMPA_PRESETS")) return env;
  return PAMPA_PRESET_DIR;
}

RunConfig resolve_config(const std::string& preset_or_path) {
  const std::filesystem::path p(preset_or_path);
  if (std::filesystem::is_regular_file(p)) return load_config(p);
  const auto bundled = preset_directory() / (preset_or_path + ".yaml");
  if (std::filesystem::is_regular_file(bundled)) return load_config(bundled);
  throw ConfigError("no config file or preset named '" + preset_or_path + "'");
}

std::vector<std::string> list_presets() {
  std::vector<std::string> names;
  const auto dir = preset_directory();
  if (!std::filesystem::is_directory(dir)) return names;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::string to_yaml(const RunConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << cfg.name;
  out << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << to_string(cfg.system.kind);
  out << YAML::Key << "gamma" << YAML::Value << cfg.system.gamma;
  out << YAML::Key << "rho_ref" << YAML::Value << cfg.system.rho_ref;
  out << YAML::Key << "bounds" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << cfg.system.lower << cfg.system.upper << YAML::EndSeq;
  out << YAML::Key << "speed" << YAML::Value << cfg.system.speed;
  out << YAML::Key << "bx" << YAML::Value << cfg.system.bx;
  out << YAML::EndMap;
  out << YAML::Key << "domain" << YAML::Value << YAML::Flow << YAML::BeginSeq << cfg.a << cfg.b
      << YAML::EndSeq;
  out << YAML::Key << "cells" << YAML::Value << cfg.cells;
  out << YAML::Key << "boundary" << YAML::Value << to_string(cfg.boundary);
  out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "breaks" << YAML::Value << YAML::Flow << cfg.initial.breaks;
  out << YAML::Key << "pieces" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : cfg.initial.pieces) {
    out << YAML::Flow << YAML::BeginMap;
    if (p.function.empty()) {
      out << YAML::Key << "state" << YAML::Value << YAML::Flow << p.state;
    } else {
      out << YAML::Key << "function" << YAML::Value << p.function;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "node_at_break" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto r : cfg.initial.node_at_break) out << node_rule_name(r);
  out << YAML::EndSeq;
  if (!cfg.initial.quadrature_breaks.empty())
    out << YAML::Key << "quadrature_breaks" << YAML::Value << YAML::Flow
        << cfg.initial.quadrature_breaks;
  if (cfg.initial.spike.enabled) {
    out << YAML::Key << "energy_spike" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "amount" << YAML::Value << cfg.initial.spike.amount;
    out << YAML::Key << "scale" << YAML::Value
        << (cfg.initial.spike.per_dx ? "per_dx" : "times_dx");
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  out << YAML::Key << "time" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "final" << YAML::Value << cfg.t_final;
  out << YAML::Key << "integrator" << YAML::Value << to_string(cfg.integrator);
  out << YAML::Key << "cfl" << YAML::Value << cfg.cfl;
  out << YAML::EndMap;
  out << YAML::Key << "limiter" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "idp" << YAML::Value << cfg.scheme.idp;
  out << YAML::Key << "oscillation" << YAML::Value << to_string(cfg.scheme.oscillation);
  out << YAML::Key << "mp_alpha" << YAML::Value << cfg.scheme.mp.alpha;
  out << YAML::Key << "mp_beta" << YAML::Value << cfg.scheme.mp.beta;
  out << YAML::Key << "floors" << YAML::Value << cfg.scheme.floor_cap;
  out << YAML::EndMap;
  out << YAML::Key << "point_variables" << YAML::Value
      << to_string(cfg.scheme.point_variables);
  if (!cfg.exact.empty()) {
    out << YAML::Key << "exact" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << cfg.exact;
    out << YAML::Key << "speed" << YAML::Value << cfg.exact_speed;
    out << YAML::EndMap;
  }
  if (cfg.reference_cells > 0) {
    out << YAML::Key << "reference" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "cells" << YAML::Value << cfg.reference_cells;
    out << YAML::Key << "cfl" << YAML::Value << cfg.reference_cfl;
    out << YAML::EndMap;
  }
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dir" << YAML::Value << cfg.out_dir;
  out << YAML::Key << "snapshots" << YAML::Value << cfg.snapshots;
  out << YAML::Key << "svg" << YAML::Value << cfg.svg;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace pampa
