#include "actlab/summary.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace actlab {

namespace {

int resolve_sample_time(std::span<const RecordRow> rows, std::optional<int> requested) {
    std::set<int> available;
    for (const auto& row : rows) available.insert(row.sample_t);
    if (available.empty()) throw ConfigError("no record rows to summarize");
    if (!requested) return *available.rbegin(); // final sample
    if (available.count(*requested) == 0) {
        std::ostringstream msg;
        msg << "sample time " << *requested << " not present; available times:";
        for (int t : available) msg << ' ' << t;
        throw ConfigError(msg.str());
    }
    return *requested;
}

std::string cell_key(const RecordRow& row) {
    return row.model + '|' + row.sweep_name + '|' + row.sweep_value + '|' + row.movement_rule +
           '|' + row.setting + '|' + row.regime + '|' + row.mode;
}

} // namespace

std::vector<SummaryRow> summarize_records(std::span<const RecordRow> rows,
                                          std::optional<int> sample_t) {
    const int t = resolve_sample_time(rows, sample_t);

    // Group in first-appearance order to keep the output deterministic.
    std::vector<std::pair<std::string, const RecordRow*>> group_order;
    std::map<std::string, std::vector<double>> groups;
    for (const auto& row : rows) {
        if (row.sample_t != t) continue;
        const std::string key = cell_key(row) + '|' + row.metric;
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) group_order.emplace_back(key, &row);
        it->second.push_back(row.value);
    }

    std::vector<SummaryRow> out;
    out.reserve(group_order.size());
    for (const auto& [key, first] : group_order) {
        const auto stats = summarize_samples(groups[key]);
        SummaryRow row;
        row.model = first->model;
        row.sweep_name = first->sweep_name;
        row.sweep_value = first->sweep_value;
        row.movement_rule = first->movement_rule;
        row.setting = first->setting;
        row.regime = first->regime;
        row.mode = first->mode;
        row.sample_t = t;
        row.metric = first->metric;
        row.n = stats.n;
        row.mean = stats.mean;
        row.stddev = stats.stddev;
        row.min = stats.min;
        row.max = stats.max;
        out.push_back(std::move(row));
    }
    return out;
}

CellSelector CellSelector::parse(const std::string& text) {
    static const std::set<std::string> kColumns = {
        "model", "sweep_name", "sweep_value", "movement_rule", "setting", "regime", "mode"};
    CellSelector selector;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("cell selector: expected 'column=value', got '" + item + "'");
        }
        const std::string column = item.substr(0, eq);
        if (kColumns.count(column) == 0) {
            std::ostringstream msg;
            msg << "cell selector: unknown column '" << column << "'; valid columns:";
            for (const auto& c : kColumns) msg << ' ' << c;
            throw ConfigError(msg.str());
        }
        selector.criteria[column] = item.substr(eq + 1);
    }
    if (selector.criteria.empty()) {
        throw ConfigError("cell selector: no criteria given");
    }
    return selector;
}

bool CellSelector::matches(const RecordRow& row) const {
    for (const auto& [column, value] : criteria) {
        const std::string* field = nullptr;
        if (column == "model") field = &row.model;
        else if (column == "sweep_name") field = &row.sweep_name;
        else if (column == "sweep_value") field = &row.sweep_value;
        else if (column == "movement_rule") field = &row.movement_rule;
        else if (column == "setting") field = &row.setting;
        else if (column == "regime") field = &row.regime;
        else if (column == "mode") field = &row.mode;
        if (field == nullptr || *field != value) return false;
    }
    return true;
}

std::string CellSelector::describe() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [column, value] : criteria) {
        if (!first) out << ',';
        out << column << '=' << value;
        first = false;
    }
    return out.str();
}

ComparisonResult compare_cells(std::span<const RecordRow> rows, const CellSelector& cell_a,
                               const CellSelector& cell_b, const std::string& metric,
                               std::optional<int> sample_t) {
    const int t = resolve_sample_time(rows, sample_t);

    auto collect = [&](const CellSelector& selector) {
        std::vector<double> values;
        for (const auto& row : rows) {
            if (row.sample_t == t && row.metric == metric && selector.matches(row)) {
                values.push_back(row.value);
            }
        }
        if (values.empty()) {
            throw ConfigError("cell selector '" + selector.describe() + "' matched no rows for metric '" +
                              metric + "'");
        }
        if (values.size() < 2) {
            throw ConfigError("cell selector '" + selector.describe() +
                              "' matched fewer than 2 runs; the comparison needs n >= 2");
        }
        return values;
    };

    const auto values_a = collect(cell_a);
    const auto values_b = collect(cell_b);

    ComparisonResult result;
    result.cell_a = cell_a.describe();
    result.cell_b = cell_b.describe();
    result.metric = metric;
    result.sample_t = t;
    result.n_a = values_a.size();
    result.n_b = values_b.size();
    result.mean_a = summarize_samples(values_a).mean;
    result.mean_b = summarize_samples(values_b).mean;
    result.welch = welch_t_test(values_a, values_b);
    return result;
}

} // namespace actlab
