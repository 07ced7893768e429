#pragma once

#include "actlab/csv.hpp"
#include "actlab/stats.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace actlab {

// Grouped means over seeds. Groups are the distinct cells
// (model, sweep value, movement rule, setting, regime, mode) at one sample
// time — the final sample unless one is requested. A requested time that no
// record carries raises ConfigError naming the available times.
std::vector<SummaryRow> summarize_records(std::span<const RecordRow> rows,
                                          std::optional<int> sample_t = {});

// Matches record rows on cell columns: model, sweep_name, sweep_value,
// movement_rule, setting, regime, mode. Parsed from "col=value,col=value".
struct CellSelector {
    std::map<std::string, std::string> criteria;

    static CellSelector parse(const std::string& text);
    bool matches(const RecordRow& row) const;
    std::string describe() const;
};

struct ComparisonResult {
    std::string cell_a;
    std::string cell_b;
    std::string metric;
    int sample_t = 0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    WelchResult welch;
};

// Welch two-sample t-test between two cells on one metric at the chosen
// (default: final) sample time. Both cells need n >= 2; an empty selector
// match is an error naming the selector.
ComparisonResult compare_cells(std::span<const RecordRow> rows, const CellSelector& cell_a,
                               const CellSelector& cell_b, const std::string& metric,
                               std::optional<int> sample_t = {});

} // namespace actlab
