#pragma once

#include "actlab/runner.hpp"
#include "actlab/stats.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace actlab {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

// One data row of records.csv. Cell dimensions that do not apply to the run
// (movement_rule outside Schelling, setting outside DPD) are empty strings.
struct RecordRow {
    std::string model;
    std::string sweep_name;
    std::string sweep_value;
    std::string movement_rule;
    std::string setting;
    std::string regime;
    std::string mode;
    int seed = 0; // seed index within the cell
    std::size_t run_index = 0;
    int sample_t = 0;
    std::string metric;
    double value = 0.0;
};

// Flattens successful runs into RecordRow order: runs by run_index, samples
// in sampling order.
std::vector<RecordRow> to_record_rows(std::span<const RunRecord> records);

// records.csv: fixed header, UTF-8, LF line endings, round-trip precision.
void write_records_csv(std::ostream& out, std::span<const RecordRow> rows);
std::vector<RecordRow> read_records_csv(std::istream& in);
void write_records_csv_file(const std::string& path, std::span<const RecordRow> rows);
std::vector<RecordRow> read_records_csv_file(const std::string& path);

struct SummaryRow {
    std::string model;
    std::string sweep_name;
    std::string sweep_value;
    std::string movement_rule;
    std::string setting;
    std::string regime;
    std::string mode;
    int sample_t = 0;
    std::string metric;
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
void write_summary_csv_file(const std::string& path, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary_csv_file(const std::string& path);

// failures.csv: run_index, regime, mode, sweep_value, movement_rule, setting,
// seed, error. Only failed runs appear.
void write_failures_csv(std::ostream& out, std::span<const RunRecord> records);

} // namespace actlab
