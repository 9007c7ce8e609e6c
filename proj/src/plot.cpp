#include "girthlab/plot.hpp"

#include "girthlab/format.hpp"
#include "girthlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace girthlab {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Figure {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
};

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool to_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

// Fixed-point coordinate text.
std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log) {
  if (log) return format_number(std::pow(10.0, v), 3);
  return format_number(std::abs(v) < 1e-12 ? 0.0 : v, 4);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

Series column_series(const CsvTable& t, const std::string& x, const std::string& y, const std::string& name,
                     const std::string& filter_col = {}, const std::string& filter_val = {}) {
  Series s;
  s.name = name;
  const std::size_t xi = t.column(x), yi = t.column(y);
  const std::size_t fi = filter_col.empty() ? 0 : t.column(filter_col);
  for (const auto& row : t.rows) {
    if (!filter_col.empty() && row[fi] != filter_val) continue;
    double a, b;
    if (to_number(row[xi], a) && to_number(row[yi], b)) s.points.emplace_back(a, b);
  }
  return s;
}

Figure build_figure(PlotKind kind, const CsvTable& t) {
  Figure f;
  switch (kind) {
    case PlotKind::CrossingVsP: {
      f.title = "crossing probability";
      f.xlabel = "p";
      f.ylabel = "P(0 <-> S_R)";
      std::vector<std::string> radii;
      const std::size_t ri = t.column("R");
      for (const auto& row : t.rows)
        if (std::find(radii.begin(), radii.end(), row[ri]) == radii.end()) radii.push_back(row[ri]);
      for (const auto& r : radii) {
        Series s = column_series(t, "p", "estimate", "R=" + r, "R", r);
        std::sort(s.points.begin(), s.points.end());
        f.series.push_back(std::move(s));
      }
      break;
    }
    case PlotKind::TailLogLog: {
      f.title = "cluster size tail";
      f.xlabel = "n";
      f.ylabel = "P(|C| >= n)";
      f.logx = f.logy = true;
      f.series.push_back(column_series(t, "n", "survival_fraction", "data"));
      // Reference slope -1/2 through the first point.
      const auto& pts = f.series.front().points;
      if (!pts.empty()) {
        Series ref;
        ref.name = "slope -1/2";
        ref.dashed = true;
        const double x0 = pts.front().first, y0 = pts.front().second;
        double x1 = x0;
        for (const auto& p : pts) x1 = std::max(x1, p.first);
        ref.points = {{x0, y0}, {x1, y0 * std::sqrt(x0 / x1)}};
        f.series.push_back(ref);
      }
      break;
    }
    case PlotKind::ChiRatio:
      f.title = "chi(z) (1/mu - z)";
      f.xlabel = "z";
      f.ylabel = "ratio";
      f.series.push_back(column_series(t, "z", "ratio_lo", "lower"));
      if (t.has_column("ratio_hi")) {
        Series hi = column_series(t, "z", "ratio_hi", "upper");
        hi.dashed = true;
        f.series.push_back(hi);
      }
      break;
    case PlotKind::SpeedVsN:
      f.title = "self-avoiding walk speed";
      f.xlabel = "n";
      f.ylabel = "E dist / n";
      f.series.push_back(column_series(t, "n", "exact", "exact"));
      if (t.has_column("rosenbluth")) {
        Series s = column_series(t, "n", "rosenbluth", "Rosenbluth");
        s.dashed = true;
        f.series.push_back(s);
      }
      break;
    case PlotKind::DecayRate:
      f.title = "endpoint law decay";
      f.xlabel = "n";
      f.ylabel = "sup_x P(SAW(n) = x)";
      f.logy = true;
      f.series.push_back(column_series(t, "n", "sup", "sup"));
      if (t.has_column("bound")) {
        Series s = column_series(t, "n", "bound", "bound");
        s.dashed = true;
        f.series.push_back(s);
      }
      break;
  }
  // Drop points a log axis cannot show.
  for (auto& s : f.series)
    std::erase_if(s.points, [&](const auto& p) { return (f.logx && p.first <= 0) || (f.logy && p.second <= 0); });
  std::erase_if(f.series, [](const Series& s) { return s.points.empty(); });
  if (f.series.empty()) throw std::invalid_argument("no plottable rows for " + to_string(kind));
  return f;
}

std::string render(const Figure& f) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto tx = [&](double v) { return f.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return f.logy ? std::log10(v) : v; };
  for (const auto& s : f.series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, tx(x)), xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y)), ymax = std::max(ymax, ty(y));
    }
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (tx(v) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kTop + ph - (ty(v) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << coord(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(f.title)
    << "</text>\n";
  o << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(pw) << "\" height=\""
    << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / kTicks, yv = ymin + (ymax - ymin) * i / kTicks;
    const double X = kLeft + pw * i / kTicks, Y = kTop + ph - ph * i / kTicks;
    o << "<line x1=\"" << coord(X) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(X) << "\" y2=\""
      << coord(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << coord(X) << "\" y=\"" << coord(kTop + ph + 18) << "\" text-anchor=\"middle\">"
      << tick_label(xv, f.logx) << "</text>\n";
    o << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(Y) << "\" x2=\"" << coord(kLeft) << "\" y2=\""
      << coord(Y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(Y + 4) << "\" text-anchor=\"end\">"
      << tick_label(yv, f.logy) << "</text>\n";
  }
  o << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10) << "\" text-anchor=\"middle\">"
    << escape(f.xlabel) << (f.logx ? " (log)" : "") << "</text>\n";
  o << "<text x=\"16\" y=\"" << coord(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << coord(kTop + ph / 2) << ")\">" << escape(f.ylabel) << (f.logy ? " (log)" : "") << "</text>\n";

  for (std::size_t i = 0; i < f.series.size(); ++i) {
    const Series& s = f.series[i];
    const char* color = kColors[i % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) o << " stroke-dasharray=\"6 4\"";
    o << " points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k)
      o << (k ? " " : "") << coord(px(s.points[k].first)) << ',' << coord(py(s.points[k].second));
    o << "\"/>\n";
    if (!s.dashed)
      for (const auto& [x, y] : s.points)
        o << "<circle cx=\"" << coord(px(x)) << "\" cy=\"" << coord(py(y)) << "\" r=\"2\" fill=\"" << color
          << "\"/>\n";
    const double ly = kTop + 14 + 16 * i;
    o << "<line x1=\"" << coord(kLeft + pw - 120) << "\" y1=\"" << coord(ly - 4) << "\" x2=\""
      << coord(kLeft + pw - 100) << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"" << color << "\"/>\n";
    o << "<text x=\"" << coord(kLeft + pw - 95) << "\" y=\"" << coord(ly) << "\">" << escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  static const std::map<std::string, PlotKind, std::less<>> kinds = {{"crossing-vs-p", PlotKind::CrossingVsP},
                                                                     {"tail-loglog", PlotKind::TailLogLog},
                                                                     {"chi-ratio", PlotKind::ChiRatio},
                                                                     {"speed-vs-n", PlotKind::SpeedVsN},
                                                                     {"decay-rate", PlotKind::DecayRate}};
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw std::invalid_argument("unknown plot kind '" + std::string(name) + "'");
  return it->second;
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::CrossingVsP: return "crossing-vs-p";
    case PlotKind::TailLogLog: return "tail-loglog";
    case PlotKind::ChiRatio: return "chi-ratio";
    case PlotKind::SpeedVsN: return "speed-vs-n";
    case PlotKind::DecayRate: return "decay-rate";
  }
  return "unknown";
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::invalid_argument("CSV lacks column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) throw std::invalid_argument("ragged CSV row: " + line);
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw std::invalid_argument("empty CSV");
  if (t.rows.empty()) throw std::invalid_argument("CSV has a header but no rows");
  return t;
}

std::string render_plot(PlotKind kind, const CsvTable& table) { return render(build_figure(kind, table)); }

void emit_plot(PlotKind kind, const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + csv_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string svg = render_plot(kind, parse_csv(ss.str()));
  write_text(svg_path, svg);
}

}  // namespace girthlab
