#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "barrierlab/version.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace barrierlab;
using namespace barrierlab::cli;

namespace {

struct Flags {
  RunConfig cfg;
  std::vector<std::string> grid;
  std::string format = "csv";
  std::string config_file;
};

void add_common(CLI::App* sub, Flags& f) {
  f.cfg.command = sub->get_name();
  sub->add_option("--precision", f.cfg.precision_bits, "working precision in bits")
      ->envname("BARRIERLAB_PRECISION")
      ->capture_default_str();
  sub->add_option("--m", f.cfg.m, "acceleration order of z_m")->capture_default_str();
  sub->add_option("--c", f.cfg.c, "constant of y_c: re, re,im or calibrate")->capture_default_str();
  sub->add_option("--tol", f.cfg.rel_tol, "relative tolerance, in (1e-60, 1e-3)")->capture_default_str();
  sub->add_option("--grid", f.grid, "axis=lo:hi:count or axis=v1,v2,... (repeatable)");
  sub->add_option("--out", f.cfg.out, "output file, stdout when empty or -");
  sub->add_option("--manifest", f.cfg.manifest, "manifest file, default <out>.manifest.json");
  sub->add_option("--format", f.format, "csv, json or svg")->capture_default_str();
  sub->add_option("--workers", f.cfg.workers, "row-parallel workers, 0 for all cores");
  sub->add_option("--config", f.config_file, "JSON config (or manifest) overriding the flags");
}

void apply_grid_flags(Flags& f) {
  for (const auto& g : f.grid) {
    size_t eq = g.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("grid must be axis=spec, got '" + g + "'");
    f.cfg.grids[g.substr(0, eq)] = g.substr(eq + 1);
  }
  f.cfg.format = parse_format(f.format);
}

void write_output(std::ostream& os, const RunConfig& cfg, const RunResult& res) {
  switch (cfg.format) {
    case Format::Csv: write_csv(os, res.sections); break;
    case Format::Json: write_json(os, cfg.command, res.sections); break;
    case Format::Svg: write_svg(os, res.sections, res.plot); break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on the singularity barrier of a 1+ difference equation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::vector<CLI::App*> subs = {
      app.add_subcommand("eval", "evaluate y0, y0_ml, y1 or y_c with a functional-equation check"),
      app.add_subcommand("scan-barrier", "ln|S(p)| of a lacunary series over a p grid"),
      app.add_subcommand("borel", "Borel transform by hairpin and by decomposition"),
      app.add_subcommand("cross-barrier", "left and right Borel transforms across Re p = 1"),
      app.add_subcommand("appendix", "median identity, saddle asymptotics and least-term truncation"),
      app.add_subcommand("zeros", "zero counts of a series over a lattice of rectangles"),
  };
  // every subcommand has its own copy of the flags; only the parsed one is used
  std::vector<Flags> per(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) add_common(subs[i], per[i]);
  subs[0]->add_option("--solution", per[0].cfg.solution, "y0, y0_ml, y1 or yc")->capture_default_str();
  for (size_t i : {1u, 5u}) {
    subs[i]->add_option("--series", per[i].cfg.series, "F, F2 or theta")->capture_default_str();
    subs[i]->add_option("--series-file", per[i].cfg.series_file, "JSON series definition");
  }
  subs[4]->add_option("--max-order", per[4].cfg.max_order, "largest order of the truncated series")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  size_t which = 0;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) which = i;
  }
  Flags& f = per[which];
  f.cfg.command = subs[which]->get_name();

  RunResult res;
  try {
    apply_grid_flags(f);
    if (!f.config_file.empty()) {
      std::ifstream in(f.config_file);
      if (!in) throw ConfigError("cannot read config " + f.config_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not JSON: ") + e.what());
      }
      apply_json(f.cfg, j);
    }
    resolve(f.cfg);
    res = run_command(f.cfg);
  } catch (const ConfigError& e) {
    std::cerr << "barrierlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "barrierlab: " << e.what() << '\n';
    return 1;
  }
  const RunConfig& cfg = f.cfg;

  long rows = 0, guard = 0, failed = 0;
  for (const auto& s : res.sections) {
    for (const auto& r : s.rows) {
      ++rows;
      if (r.status == RowStatus::Guard) ++guard;
      if (r.status == RowStatus::Failed) ++failed;
    }
  }
  const int code = failed > 0 ? 1 : 0;

  const bool to_stdout = cfg.out.empty() || cfg.out == "-";
  if (to_stdout) {
    write_output(std::cout, cfg, res);
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "barrierlab: cannot write " << cfg.out << '\n';
      return 2;
    }
    write_output(out, cfg, res);
  }

  json manifest;
  manifest["artifact"] = "barrierlab";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(cfg);
  for (const auto& [k, v] : res.extra.items()) manifest[k] = v;
  manifest["rows"] = rows;
  manifest["guard_rows"] = guard;
  manifest["failed_rows"] = failed;
  manifest["exit_code"] = code;
  if (cfg.manifest.empty()) {
    std::cerr << manifest.dump(2) << '\n';
  } else {
    std::ofstream m(cfg.manifest, std::ios::binary);
    if (!m) {
      std::cerr << "barrierlab: cannot write " << cfg.manifest << '\n';
      return 2;
    }
    m << manifest.dump(2) << '\n';
  }
  return code;
}
