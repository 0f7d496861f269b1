#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "barrierlab/errors.hpp"
#include "barrierlab/hp/complex.hpp"

namespace barrierlab::cli {

enum class RowStatus { Ok, Guard, Failed };

struct Row {
  std::vector<std::string> cells;
  RowStatus status = RowStatus::Ok;
};

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// How a section is drawn in SVG. A heat map needs x, y and value columns;
// otherwise y is drawn against x as one polyline per distinct group value.
struct PlotSpec {
  std::string section;
  std::string x, y, value, group;
  bool log_y = false;
  bool heat_map = false;
};

// Pole and guard flags; rows failing with these do not fail the run.
bool is_guard(ErrorCode code);

// The error cell for an exception raised while a row was evaluated.
Row error_row(size_t ncells, const std::string& message, RowStatus status);

std::string fmt(const hp::Real& r, int digits);

void write_csv(std::ostream& os, const std::vector<Section>& sections);
void write_json(std::ostream& os, const std::string& command, const std::vector<Section>& sections);
void write_svg(std::ostream& os, const std::vector<Section>& sections, const PlotSpec& plot);

}  // namespace barrierlab::cli
