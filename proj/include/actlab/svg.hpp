#pragma once

#include "actlab/csv.hpp"

#include <span>
#include <string>
#include <vector>

namespace actlab {

enum class FigureKind {
    Line,       // metric vs sweep value, one polyline per regime/mode cell
    GroupedBar, // one bar group per sweep value, one bar per cell x metric
};

FigureKind parse_figure_kind(const std::string& name);

struct FigureSpec {
    FigureKind kind = FigureKind::Line;
    std::vector<std::string> metrics; // exactly one for Line
};

// Renders the figure from summary rows. Missing metrics raise ConfigError
// listing the metrics present; an empty group set is an error, so no file is
// ever written for one.
std::string render_figure(std::span<const SummaryRow> summary, const FigureSpec& spec);

void write_figure_file(const std::string& path, std::span<const SummaryRow> summary,
                       const FigureSpec& spec);

} // namespace actlab
