#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "json.hpp"

namespace barrierlab::cli {

bool is_guard(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleAtPositiveInteger:
    case ErrorCode::PoleAtNonPositiveInteger:
    case ErrorCode::BarrierProximity:
    case ErrorCode::OutOfDomain:
    case ErrorCode::OnBranchCut:
    case ErrorCode::NearCriticalPoint:
    case ErrorCode::BranchPointTooClose:
    case ErrorCode::ZeroOnBoundary:
      return true;
    default:
      return false;
  }
}

Row error_row(size_t ncells, const std::string& message, RowStatus status) {
  Row r;
  r.cells.assign(ncells, "");
  if (ncells > 0) r.cells.back() = message;
  r.status = status;
  return r;
}

std::string fmt(const hp::Real& r, int digits) { return r.str(digits); }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_cell(cells[i]);
  }
  os << '\n';
}

int column(const Section& s, const std::string& name) {
  auto it = std::find(s.columns.begin(), s.columns.end(), name);
  return it == s.columns.end() ? -1 : static_cast<int>(it - s.columns.begin());
}

// Plot coordinates; values beyond double range or empty cells are skipped.
bool number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return *end == '\0' && std::isfinite(out);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// blue -> red through white
std::string color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {
    double u = t / 0.5;
    r = static_cast<int>(59 + u * (255 - 59));
    g = static_cast<int>(76 + u * (255 - 76));
    b = static_cast<int>(192 + u * (255 - 192));
  } else {
    double u = (t - 0.5) / 0.5;
    r = static_cast<int>(255 - u * (255 - 180));
    g = static_cast<int>(255 - u * (255 - 4));
    b = static_cast<int>(255 - u * (255 - 38));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  static constexpr double W = 640, H = 420, L = 70, R = 20, T = 30, B = 50;
  double px(double x) const { return L + (x - x0) / (x1 - x0) * (W - L - R); }
  double py(double y) const { return H - B - (y - y0) / (y1 - y0) * (H - T - B); }
};

void fit(double lo, double hi, double& a, double& b) {
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  a = lo;
  b = hi;
}

void axes(std::ostream& os, const Frame& f, const std::string& xl, const std::string& yl, const std::string& title) {
  os << "<rect x=\"" << num(f.L) << "\" y=\"" << num(f.T) << "\" width=\"" << num(f.W - f.L - f.R)
     << "\" height=\"" << num(f.H - f.T - f.B) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = f.x0 + (f.x1 - f.x0) * i / 4, yv = f.y0 + (f.y1 - f.y0) * i / 4;
    char bx[32], by[32];
    std::snprintf(bx, sizeof bx, "%.4g", xv);
    std::snprintf(by, sizeof by, "%.4g", yv);
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.H - f.B + 18) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << bx << "</text>\n";
    os << "<text x=\"" << num(f.L - 6) << "\" y=\"" << num(f.py(yv) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
       << by << "</text>\n";
  }
  os << "<text x=\"" << num((f.L + f.W - f.R) / 2) << "\" y=\"" << num(f.H - 10)
     << "\" font-size=\"12\" text-anchor=\"middle\">" << xl << "</text>\n";
  os << "<text x=\"14\" y=\"" << num((f.T + f.H - f.B) / 2) << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << num((f.T + f.H - f.B) / 2) << ")\">" << yl << "</text>\n";
  os << "<text x=\"" << num(f.L) << "\" y=\"18\" font-size=\"13\">" << title << "</text>\n";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<Section>& sections) {
  const bool named = sections.size() > 1;
  for (size_t i = 0; i < sections.size(); ++i) {
    const Section& s = sections[i];
    if (i) os << '\n';
    if (named) os << "# " << s.name << '\n';
    csv_line(os, s.columns);
    for (const Row& r : s.rows) csv_line(os, r.cells);
  }
}

void write_json(std::ostream& os, const std::string& command, const std::vector<Section>& sections) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["sections"] = nlohmann::ordered_json::array();
  for (const Section& s : sections) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["columns"] = s.columns;
    js["rows"] = nlohmann::ordered_json::array();
    for (const Row& r : s.rows) js["rows"].push_back(r.cells);
    j["sections"].push_back(js);
  }
  os << j.dump(1) << '\n';
}

void write_svg(std::ostream& os, const std::vector<Section>& sections, const PlotSpec& plot) {
  const Section* sec = nullptr;
  for (const Section& s : sections) {
    if (s.name == plot.section) sec = &s;
  }
  if (!sec) sec = &sections.front();
  const int cx = column(*sec, plot.x), cy = column(*sec, plot.y);
  const int cv = plot.heat_map ? column(*sec, plot.value) : -1;
  const int cg = plot.group.empty() ? -1 : column(*sec, plot.group);
  Frame f;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.W) << "\" height=\"" << num(f.H) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  struct P {
    double x, y, v;
    std::string g;
  };
  std::vector<P> pts;
  for (const Row& r : sec->rows) {
    P p{0, 0, 0, cg >= 0 ? r.cells[cg] : ""};
    if (cx < 0 || cy < 0 || !number(r.cells[cx], p.x) || !number(r.cells[cy], p.y)) continue;
    if (plot.heat_map && (cv < 0 || !number(r.cells[cv], p.v))) continue;
    if (!plot.heat_map && plot.log_y) {
      if (!(std::fabs(p.y) > 0)) continue;
      p.y = std::log10(std::fabs(p.y));
    }
    pts.push_back(p);
  }
  if (pts.empty()) {
    os << "<text x=\"20\" y=\"40\">no plottable rows</text>\n</svg>\n";
    return;
  }
  auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.y < b.y; });
  fit(xmin->x, xmax->x, f.x0, f.x1);
  fit(ymin->y, ymax->y, f.y0, f.y1);

  if (plot.heat_map) {
    std::vector<double> xs, ys;
    for (const P& p : pts) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto [vmin, vmax] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.v < b.v; });
    const double span = vmax->v > vmin->v ? vmax->v - vmin->v : 1.0;
    // cells centred on the samples
    if (xs.size() > 1) {
      double h = (xs.back() - xs.front()) / (2.0 * (xs.size() - 1));
      f.x0 = xs.front() - h;
      f.x1 = xs.back() + h;
    }
    if (ys.size() > 1) {
      double h = (ys.back() - ys.front()) / (2.0 * (ys.size() - 1));
      f.y0 = ys.front() - h;
      f.y1 = ys.back() + h;
    }
    const double cw = (f.W - f.L - f.R) / static_cast<double>(xs.size());
    const double ch = (f.H - f.T - f.B) / static_cast<double>(ys.size());
    for (const P& p : pts) {
      double i = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
      double k = static_cast<double>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin());
      os << "<rect x=\"" << num(f.L + i * cw) << "\" y=\"" << num(f.H - f.B - (k + 1) * ch) << "\" width=\""
         << num(cw + 0.5) << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << color((p.v - vmin->v) / span)
         << "\"/>\n";
    }
    axes(os, f, plot.x, plot.y, plot.value);
  } else {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    std::vector<std::string> order;
    std::map<std::string, std::vector<P>> groups;
    for (const P& p : pts) {
      if (!groups.count(p.g)) order.push_back(p.g);
      groups[p.g].push_back(p);
    }
    for (size_t gi = 0; gi < order.size(); ++gi) {
      const char* col = palette[gi % 6];
      os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
      for (const P& p : groups[order[gi]]) os << num(f.px(p.x)) << ',' << num(f.py(p.y)) << ' ';
      os << "\"/>\n";
      for (const P& p : groups[order[gi]]) {
        os << "<circle cx=\"" << num(f.px(p.x)) << "\" cy=\"" << num(f.py(p.y)) << "\" r=\"2.5\" fill=\"" << col
           << "\"/>\n";
      }
      if (cg >= 0) {
        double v = 0;
        std::string label = order[gi];
        if (number(label, v)) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.4g", v);
          label = buf;
        }
        os << "<text x=\"" << num(f.W - f.R - 80) << "\" y=\"" << num(f.T + 16 + 14 * gi)
           << "\" font-size=\"11\" fill=\"" << col << "\">" << plot.group << " = " << label << "</text>\n";
      }
    }
    axes(os, f, plot.x, plot.log_y ? "log10 |" + plot.y + "|" : plot.y, sec->name);
  }
  os << "</svg>\n";
}

}  // namespace barrierlab::cli
