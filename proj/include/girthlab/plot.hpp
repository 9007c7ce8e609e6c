#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace girthlab {

enum class PlotKind { CrossingVsP, TailLogLog, ChiRatio, SpeedVsN, DecayRate };

/// Accepts crossing-vs-p, tail-loglog, chi-ratio, speed-vs-n, decay-rate.
PlotKind parse_plot_kind(std::string_view name);
std::string to_string(PlotKind kind);

/// Header plus rows of a comma-separated file without quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index, or throws std::invalid_argument.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

/// Throws std::invalid_argument on empty text or ragged rows.
CsvTable parse_csv(std::string_view text);

/// SVG text for `table`: fixed 640x420 canvas, axes from the data range.
/// Throws std::invalid_argument when the table has no plottable rows or
/// lacks the kind's columns.
std::string render_plot(PlotKind kind, const CsvTable& table);

/// Reads `csv_path`, renders, and writes `svg_path`. Nothing is written when
/// reading or rendering fails.
void emit_plot(PlotKind kind, const std::string& csv_path, const std::string& svg_path);

}  // namespace girthlab
