#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "barrierlab/hp/complex.hpp"
#include "json.hpp"

namespace barrierlab::cli {

using hp::Complex;
using hp::Real;
using json = nlohmann::ordered_json;

enum class Format { Csv, Json, Svg };

const char* to_string(Format f);
Format parse_format(const std::string& s);

// Everything that determines the output of a run. The manifest echoes the
// resolved value and can be fed back through --config.
struct RunConfig {
  std::string command;
  int precision_bits = 256;
  int m = 2;
  // "re", "re,im" or "calibrate"
  std::string c = "0";
  double rel_tol = 1e-20;
  // axis name -> "lo:hi:count" or "v1,v2,..."
  std::map<std::string, std::string> grids;
  // empty or "-": stdout
  std::string out;
  // empty: <out>.manifest.json, or stderr when out is stdout
  std::string manifest;
  Format format = Format::Csv;
  std::string solution = "y1";
  std::string series = "F";
  std::string series_file;
  int max_order = 60;
  unsigned workers = 0;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Axes a command reads, with the values used when the grid is not given.
const std::map<std::string, std::string>& default_grids(const std::string& command);

// Fills missing axes, rejects unknown ones and checks every invariant.
void resolve(RunConfig& cfg);

json to_json(const RunConfig& cfg);
// Keys present in j override cfg; unknown keys are an error.
void apply_json(RunConfig& cfg, const json& j);

std::vector<Real> parse_axis(const std::string& spec, int bits);
std::vector<Real> axis(const RunConfig& cfg, const std::string& name);

// c as a number; throws for "calibrate".
Complex parse_complex(const std::string& s, int bits);
bool wants_calibration(const RunConfig& cfg);

}  // namespace barrierlab::cli
