#include "actlab/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace actlab {

FigureKind parse_figure_kind(const std::string& name) {
    if (name == "line") return FigureKind::Line;
    if (name == "grouped-bar") return FigureKind::GroupedBar;
    throw ConfigError("unknown figure kind '" + name + "'; valid kinds: line, grouped-bar");
}

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 180.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string px(double v) {
    return format_double(std::round(v * 100.0) / 100.0);
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Cell identity without the sweep value: one series / bar family per cell.
std::string series_key(const SummaryRow& row) {
    std::string key;
    auto add = [&](const std::string& part) {
        if (part.empty()) return;
        if (!key.empty()) key += '/';
        key += part;
    };
    add(row.movement_rule);
    add(row.regime);
    add(row.mode);
    return key.empty() ? "all" : key;
}

double parse_numeric(const std::string& value, const std::string& what) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("figure: " + what + " '" + value + "' is not numeric");
    }
    return out;
}

void require_metric(std::span<const SummaryRow> summary, const std::string& metric) {
    std::set<std::string> available;
    bool found = false;
    for (const auto& row : summary) {
        available.insert(row.metric);
        if (row.metric == metric) found = true;
    }
    if (!found) {
        std::ostringstream msg;
        msg << "figure: metric '" << metric << "' not in summary; available metrics:";
        for (const auto& m : available) msg << ' ' << m;
        throw ConfigError(msg.str());
    }
}

struct Frame {
    double x0, x1, y0, y1; // data ranges
    double plot_w = kWidth - kMarginLeft - kMarginRight;
    double plot_h = kHeight - kMarginTop - kMarginBottom;

    double sx(double x) const {
        return kMarginLeft + (x1 == x0 ? plot_w / 2 : (x - x0) / (x1 - x0) * plot_w);
    }
    double sy(double y) const {
        return kMarginTop + plot_h - (y1 == y0 ? plot_h / 2 : (y - y0) / (y1 - y0) * plot_h);
    }
};

void open_svg(std::ostringstream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(kWidth) << "\" height=\""
        << px(kHeight) << "\" viewBox=\"0 0 " << px(kWidth) << " " << px(kHeight) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_axes(std::ostringstream& out, const Frame& f, const std::string& x_label,
               const std::string& y_label) {
    const double left = kMarginLeft;
    const double right = kWidth - kMarginRight;
    const double top = kMarginTop;
    const double bottom = kHeight - kMarginBottom;
    out << "<line x1=\"" << px(left) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(right)
        << "\" y2=\"" << px(bottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
        << "\" y2=\"" << px(bottom) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px((left + right) / 2) << "\" y=\"" << px(kHeight - 14)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << px((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
        << px((top + bottom) / 2) << ")\">" << escape_xml(y_label) << "</text>\n";
    // y ticks
    for (int i = 0; i <= 4; ++i) {
        const double value = f.y0 + (f.y1 - f.y0) * i / 4.0;
        const double y = f.sy(value);
        out << "<line x1=\"" << px(left - 4) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left)
            << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(left - 8) << "\" y=\"" << px(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">"
            << format_double(std::round(value * 1000.0) / 1000.0) << "</text>\n";
    }
}

void draw_legend(std::ostringstream& out, std::span<const std::string> labels) {
    const double x = kWidth - kMarginRight + 12;
    double y = kMarginTop + 8;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        out << "<rect x=\"" << px(x) << "\" y=\"" << px(y - 8) << "\" width=\"14\" height=\"8\""
            << " fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << px(x + 20) << "\" y=\"" << px(y)
            << "\" font-size=\"11\">" << escape_xml(labels[i]) << "</text>\n";
        y += 18;
    }
}

std::string render_line(std::span<const SummaryRow> summary, const std::string& metric) {
    require_metric(summary, metric);

    std::string sweep_name;
    std::map<std::string, std::map<double, double>> series; // key -> x -> mean
    for (const auto& row : summary) {
        if (row.metric != metric) continue;
        if (row.sweep_value.empty()) {
            throw ConfigError("figure: the line kind needs a swept dimension on the x axis");
        }
        sweep_name = row.sweep_name;
        series[series_key(row)][parse_numeric(row.sweep_value, "sweep value")] = row.mean;
    }
    if (series.empty()) throw ConfigError("figure: no groups matched");

    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const auto& [key, points] : series) {
        for (const auto& [x, y] : points) {
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    y0 = std::min(y0, 0.0);
    if (y1 == y0) y1 = y0 + 1.0;
    Frame f{x0, x1, y0, y1};

    std::ostringstream out;
    open_svg(out);
    draw_axes(out, f, sweep_name.empty() ? "sweep" : sweep_name, metric);
    // x ticks on the distinct sweep values
    std::set<double> xs;
    for (const auto& [key, points] : series) {
        for (const auto& [x, y] : points) xs.insert(x);
    }
    for (double x : xs) {
        const double sx = f.sx(x);
        out << "<line x1=\"" << px(sx) << "\" y1=\"" << px(kHeight - kMarginBottom) << "\" x2=\""
            << px(sx) << "\" y2=\"" << px(kHeight - kMarginBottom + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(sx) << "\" y=\"" << px(kHeight - kMarginBottom + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(x) << "</text>\n";
    }

    std::vector<std::string> labels;
    std::size_t index = 0;
    for (const auto& [key, points] : series) {
        const char* color = kPalette[index % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first_point = true;
        for (const auto& [x, y] : points) {
            if (!first_point) out << ' ';
            out << px(f.sx(x)) << ',' << px(f.sy(y));
            first_point = false;
        }
        out << "\"/>\n";
        labels.push_back(key);
        ++index;
    }
    draw_legend(out, labels);
    out << "</svg>\n";
    return out.str();
}

std::string render_grouped_bar(std::span<const SummaryRow> summary,
                               std::span<const std::string> metrics) {
    for (const auto& metric : metrics) require_metric(summary, metric);

    // Groups: sweep values in first-appearance order. Bars: series x metric.
    std::vector<std::string> groups;
    std::set<std::string> seen_groups;
    std::vector<std::string> bar_keys;
    std::set<std::string> seen_bars;
    std::map<std::string, double> values; // group|bar -> mean
    std::string sweep_name;
    for (const auto& row : summary) {
        bool wanted = false;
        for (const auto& metric : metrics) {
            if (row.metric == metric) wanted = true;
        }
        if (!wanted) continue;
        sweep_name = row.sweep_name;
        const std::string group = row.sweep_value.empty() ? row.setting : row.sweep_value;
        if (seen_groups.insert(group).second) groups.push_back(group);
        const std::string bar = series_key(row) + ':' + row.metric;
        if (seen_bars.insert(bar).second) bar_keys.push_back(bar);
        values[group + '|' + bar] = row.mean;
    }
    if (groups.empty() || bar_keys.empty()) throw ConfigError("figure: no groups matched");
    std::sort(bar_keys.begin(), bar_keys.end());

    double y1 = 0.0, y0 = 0.0;
    for (const auto& [key, v] : values) {
        y1 = std::max(y1, v);
        y0 = std::min(y0, v);
    }
    if (y1 == y0) y1 = y0 + 1.0;
    Frame f{0, 1, y0, y1};

    std::ostringstream out;
    open_svg(out);
    draw_axes(out, f, sweep_name.empty() ? "group" : sweep_name, "mean");

    const double plot_left = kMarginLeft;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double group_w = plot_w / static_cast<double>(groups.size());
    const double slot_w = group_w / static_cast<double>(bar_keys.size() + 1);
    const double base_y = f.sy(std::max(0.0, y0));

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double gx = plot_left + group_w * static_cast<double>(g);
        for (std::size_t b = 0; b < bar_keys.size(); ++b) {
            const auto it = values.find(groups[g] + '|' + bar_keys[b]);
            if (it == values.end()) continue;
            const double value = it->second;
            const double top = f.sy(std::max(value, 0.0));
            const double bottom = value >= 0.0 ? base_y : f.sy(value);
            const char* color = kPalette[b % std::size(kPalette)];
            out << "<rect x=\"" << px(gx + slot_w * (static_cast<double>(b) + 0.5)) << "\" y=\""
                << px(top) << "\" width=\"" << px(slot_w) << "\" height=\""
                << px(std::max(bottom - top, 0.0)) << "\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << px(gx + group_w / 2) << "\" y=\""
            << px(kHeight - kMarginBottom + 18) << "\" text-anchor=\"middle\" font-size=\"11\">"
            << escape_xml(groups[g]) << "</text>\n";
    }
    draw_legend(out, bar_keys);
    out << "</svg>\n";
    return out.str();
}

} // namespace

std::string render_figure(std::span<const SummaryRow> summary, const FigureSpec& spec) {
    if (spec.kind == FigureKind::Line) {
        if (spec.metrics.size() != 1) {
            throw ConfigError("figure: the line kind takes exactly one metric");
        }
        return render_line(summary, spec.metrics.front());
    }
    if (spec.metrics.empty()) throw ConfigError("figure: no metric given");
    return render_grouped_bar(summary, spec.metrics);
}

void write_figure_file(const std::string& path, std::span<const SummaryRow> summary,
                       const FigureSpec& spec) {
    const std::string svg = render_figure(summary, spec); // rendered before the file opens
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << svg;
    if (!out) throw ContractViolation("write to '" + path + "' failed");
}

} // namespace actlab
