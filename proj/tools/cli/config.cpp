#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

namespace barrierlab::cli {

namespace {

const std::map<std::string, std::map<std::string, std::string>> kDefaults = {
    {"eval", {{"x_re", "1.5:19.5:10"}, {"x_im", "0"}}},
    {"scan-barrier", {{"p_re", "0.5:0.95:10"}, {"p_im", "0"}}},
    {"borel", {{"p_re", "-3,-2,-1,-0.5,0.5"}, {"p_im", "0"}}},
    {"cross-barrier", {{"t", "0,0.5,1,2"}, {"eps", "0.1,0.05,0.025"}}},
    {"appendix", {{"t", "20,40,60"}, {"x", "3.3,6,8,10,12"}}},
    // cell edges; every cell of the lattice is one rectangle
    {"zeros", {{"p_re", "-2,-1,0"}, {"p_im", "-3.5,-1.5,1.5,3.5"}}},
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Real parse_real(const std::string& s, int bits) {
  if (s.empty()) throw ConfigError("empty number");
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ConfigError("not a number: '" + s + "'");
  return Real(s, bits);
}

}  // namespace

const char* to_string(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
  }
  return "csv";
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  throw ConfigError("format must be csv, json or svg");
}

const std::map<std::string, std::string>& default_grids(const std::string& command) {
  auto it = kDefaults.find(command);
  if (it == kDefaults.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

std::vector<Real> parse_axis(const std::string& spec, int bits) {
  std::vector<Real> out;
  if (spec.find(':') != std::string::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("range must be lo:hi:count, got '" + spec + "'");
    Real lo = parse_real(parts[0], bits), hi = parse_real(parts[1], bits);
    char* end = nullptr;
    long n = std::strtol(parts[2].c_str(), &end, 10);
    if (parts[2].empty() || *end != '\0' || n < 1) throw ConfigError("range count must be a positive integer");
    if (n == 1) return {lo};
    Real step = (hi - lo) / Real(n - 1, bits);
    for (long i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + step * Real(i, bits));
    return out;
  }
  for (const auto& v : split(spec, ',')) out.push_back(parse_real(v, bits));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

std::vector<Real> axis(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.grids.find(name);
  if (it == cfg.grids.end()) throw ConfigError("missing axis " + name);
  return parse_axis(it->second, cfg.precision_bits);
}

bool wants_calibration(const RunConfig& cfg) { return cfg.c == "calibrate"; }

Complex parse_complex(const std::string& s, int bits) {
  auto parts = split(s, ',');
  if (parts.size() == 1) return Complex(parse_real(parts[0], bits), Real(0L, bits));
  if (parts.size() == 2) return Complex(parse_real(parts[0], bits), parse_real(parts[1], bits));
  throw ConfigError("complex value must be 're' or 're,im', got '" + s + "'");
}

void resolve(RunConfig& cfg) {
  const auto& defaults = default_grids(cfg.command);
  for (const auto& [name, spec] : cfg.grids) {
    if (!defaults.count(name)) throw ConfigError("axis '" + name + "' is not used by " + cfg.command);
  }
  for (const auto& [name, spec] : defaults) cfg.grids.emplace(name, spec);

  if (cfg.precision_bits < 53 || cfg.precision_bits > 65536) throw ConfigError("precision must lie in [53, 65536]");
  if (!(cfg.rel_tol > 1e-60 && cfg.rel_tol < 1e-3)) throw ConfigError("tol must lie in (1e-60, 1e-3)");
  if (cfg.m < 0) throw ConfigError("m must be non-negative");
  if (cfg.command == "cross-barrier" && cfg.m < 2) throw ConfigError("cross-barrier needs m >= 2");
  if (cfg.max_order < 2) throw ConfigError("max-order must be at least 2");
  static const std::set<std::string> solutions = {"y0", "y0_ml", "y1", "yc"};
  if (!solutions.count(cfg.solution)) throw ConfigError("solution must be y0, y0_ml, y1 or yc");
  static const std::set<std::string> series = {"F", "F2", "theta"};
  if (cfg.series_file.empty() && !series.count(cfg.series)) throw ConfigError("series must be F, F2 or theta");
  if (!wants_calibration(cfg)) parse_complex(cfg.c, cfg.precision_bits);
  // no axis may be empty
  for (const auto& [name, spec] : cfg.grids) axis(cfg, name);
  if (cfg.command == "zeros") {
    if (axis(cfg, "p_re").size() < 2 || axis(cfg, "p_im").size() < 2) {
      throw ConfigError("zeros needs at least two edges on each axis");
    }
  }
  if (cfg.manifest.empty() && !cfg.out.empty() && cfg.out != "-") cfg.manifest = cfg.out + ".manifest.json";
}

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["precision"] = cfg.precision_bits;
  j["m"] = cfg.m;
  j["c"] = cfg.c;
  j["tol"] = cfg.rel_tol;
  j["grid"] = json::object();
  for (const auto& [name, spec] : cfg.grids) j["grid"][name] = spec;
  j["out"] = cfg.out;
  j["manifest"] = cfg.manifest;
  j["format"] = to_string(cfg.format);
  j["solution"] = cfg.solution;
  j["series"] = cfg.series;
  j["series_file"] = cfg.series_file;
  j["max_order"] = cfg.max_order;
  return j;
}

void apply_json(RunConfig& cfg, const json& input) {
  // a whole manifest is accepted as well
  const json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") {
        if (v.get<std::string>() != cfg.command) {
          throw ConfigError("config is for '" + v.get<std::string>() + "', not '" + cfg.command + "'");
        }
      } else if (key == "precision") {
        cfg.precision_bits = v.get<int>();
      } else if (key == "m") {
        cfg.m = v.get<int>();
      } else if (key == "c") {
        cfg.c = v.is_number() ? json(v).dump() : v.get<std::string>();
      } else if (key == "tol") {
        cfg.rel_tol = v.get<double>();
      } else if (key == "grid") {
        for (const auto& [name, spec] : v.items()) cfg.grids[name] = spec.get<std::string>();
      } else if (key == "out") {
        cfg.out = v.get<std::string>();
      } else if (key == "manifest") {
        cfg.manifest = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(v.get<std::string>());
      } else if (key == "solution") {
        cfg.solution = v.get<std::string>();
      } else if (key == "series") {
        cfg.series = v.get<std::string>();
      } else if (key == "series_file") {
        cfg.series_file = v.get<std::string>();
      } else if (key == "max_order") {
        cfg.max_order = v.get<int>();
      } else if (key == "workers") {
        cfg.workers = v.get<unsigned>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

}  // namespace barrierlab::cli
