#include "actlab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace actlab {

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

namespace {

constexpr const char* kRecordsHeader =
    "model,sweep_name,sweep_value,movement_rule,setting,regime,mode,seed,run_index,"
    "sample_t,metric,value";

constexpr const char* kSummaryHeader =
    "model,sweep_name,sweep_value,movement_rule,setting,regime,mode,sample_t,metric,"
    "n,mean,std,min,max";

void check_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") != std::string::npos) {
        throw ConfigError("csv field contains a reserved character: '" + value + "'");
    }
}

std::vector<std::string> split_line(const std::string& line, std::size_t expected,
                                    std::size_t line_no, const char* what) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() != expected) {
        throw ConfigError(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                          std::to_string(expected) + " fields, got " +
                          std::to_string(fields.size()));
    }
    return fields;
}

double parse_csv_double(const std::string& value, std::size_t line_no, const char* what) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(std::string(what) + " line " + std::to_string(line_no) +
                          ": bad number '" + value + "'");
    }
    return out;
}

long long parse_csv_int(const std::string& value, std::size_t line_no, const char* what) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(std::string(what) + " line " + std::to_string(line_no) +
                          ": bad integer '" + value + "'");
    }
    return out;
}

} // namespace

std::vector<RecordRow> to_record_rows(std::span<const RunRecord> records) {
    std::vector<RecordRow> rows;
    for (const auto& record : records) {
        if (record.failed()) continue;
        const auto& desc = record.desc;
        RecordRow base;
        base.model = to_string(desc.setup.kind);
        base.sweep_name = desc.sweep_name;
        base.sweep_value = desc.sweep_value;
        if (desc.setup.kind == ModelKind::Schelling) {
            base.movement_rule = to_string(desc.setup.schelling.movement_rule);
        }
        if (desc.setup.setting) base.setting = std::to_string(*desc.setup.setting);
        base.regime = to_string(desc.regime.kind);
        base.mode = to_string(desc.mode.mode);
        base.seed = desc.seed_index;
        base.run_index = desc.run_index;
        for (const auto& sample : record.samples) {
            RecordRow row = base;
            row.sample_t = sample.sample_t;
            row.metric = sample.metric;
            row.value = sample.value;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_records_csv(std::ostream& out, std::span<const RecordRow> rows) {
    out << kRecordsHeader << '\n';
    for (const auto& row : rows) {
        for (const auto* field : {&row.model, &row.sweep_name, &row.sweep_value,
                                  &row.movement_rule, &row.setting, &row.regime, &row.mode,
                                  &row.metric}) {
            check_field(*field);
        }
        out << row.model << ',' << row.sweep_name << ',' << row.sweep_value << ','
            << row.movement_rule << ',' << row.setting << ',' << row.regime << ',' << row.mode
            << ',' << row.seed << ',' << row.run_index << ',' << row.sample_t << ',' << row.metric
            << ',' << format_double(row.value) << '\n';
    }
}

std::vector<RecordRow> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader) {
        throw ConfigError("records csv: missing or unexpected header");
    }
    std::vector<RecordRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line, 12, line_no, "records csv");
        RecordRow row;
        row.model = f[0];
        row.sweep_name = f[1];
        row.sweep_value = f[2];
        row.movement_rule = f[3];
        row.setting = f[4];
        row.regime = f[5];
        row.mode = f[6];
        row.seed = static_cast<int>(parse_csv_int(f[7], line_no, "records csv"));
        row.run_index = static_cast<std::size_t>(parse_csv_int(f[8], line_no, "records csv"));
        row.sample_t = static_cast<int>(parse_csv_int(f[9], line_no, "records csv"));
        row.metric = f[10];
        row.value = parse_csv_double(f[11], line_no, "records csv");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
    out << kSummaryHeader << '\n';
    for (const auto& row : rows) {
        out << row.model << ',' << row.sweep_name << ',' << row.sweep_value << ','
            << row.movement_rule << ',' << row.setting << ',' << row.regime << ',' << row.mode
            << ',' << row.sample_t << ',' << row.metric << ',' << row.n << ','
            << format_double(row.mean) << ',' << format_double(row.stddev) << ','
            << format_double(row.min) << ',' << format_double(row.max) << '\n';
    }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSummaryHeader) {
        throw ConfigError("summary csv: missing or unexpected header");
    }
    std::vector<SummaryRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_line(line, 14, line_no, "summary csv");
        SummaryRow row;
        row.model = f[0];
        row.sweep_name = f[1];
        row.sweep_value = f[2];
        row.movement_rule = f[3];
        row.setting = f[4];
        row.regime = f[5];
        row.mode = f[6];
        row.sample_t = static_cast<int>(parse_csv_int(f[7], line_no, "summary csv"));
        row.metric = f[8];
        row.n = static_cast<std::size_t>(parse_csv_int(f[9], line_no, "summary csv"));
        row.mean = parse_csv_double(f[10], line_no, "summary csv");
        row.stddev = parse_csv_double(f[11], line_no, "summary csv");
        row.min = parse_csv_double(f[12], line_no, "summary csv");
        row.max = parse_csv_double(f[13], line_no, "summary csv");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_failures_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << "run_index,regime,mode,sweep_value,movement_rule,setting,seed,error\n";
    for (const auto& record : records) {
        if (!record.failed()) continue;
        const auto& desc = record.desc;
        std::string error = record.error;
        for (auto& c : error) {
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        }
        out << desc.run_index << ',' << to_string(desc.regime.kind) << ','
            << to_string(desc.mode.mode) << ',' << desc.sweep_value << ','
            << (desc.movement_rule ? to_string(*desc.movement_rule) : std::string{}) << ','
            << (desc.setup.setting ? std::to_string(*desc.setup.setting) : std::string{}) << ','
            << desc.seed_index << ',' << error << '\n';
    }
}

namespace {

template <typename Row>
void write_csv_file(const std::string& path, std::span<const Row> rows,
                    void (*writer)(std::ostream&, std::span<const Row>)) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    writer(out, rows);
    if (!out) throw ContractViolation("write to '" + path + "' failed");
}

template <typename Row>
std::vector<Row> read_csv_file(const std::string& path,
                               std::vector<Row> (*reader)(std::istream&)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return reader(in);
}

} // namespace

void write_records_csv_file(const std::string& path, std::span<const RecordRow> rows) {
    write_csv_file(path, rows, &write_records_csv);
}

std::vector<RecordRow> read_records_csv_file(const std::string& path) {
    return read_csv_file(path, &read_records_csv);
}

void write_summary_csv_file(const std::string& path, std::span<const SummaryRow> rows) {
    write_csv_file(path, rows, &write_summary_csv);
}

std::vector<SummaryRow> read_summary_csv_file(const std::string& path) {
    return read_csv_file(path, &read_summary_csv);
}

} // namespace actlab
