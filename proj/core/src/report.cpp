#include "semiplanar/analysis.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>

namespace semiplanar {

const char* to_string(InequalityId id) noexcept {
    switch (id) {
    case InequalityId::RVC1: return "RVC1";
    case InequalityId::VD1: return "VD1";
    case InequalityId::RVCG1: return "RVCG1";
    case InequalityId::VDG1: return "VDG1";
    case InequalityId::PIG1: return "PIG1";
    case InequalityId::MVI_G: return "MVI-G";
    case InequalityId::MVI_X: return "MVI-X";
    case InequalityId::HARNACK: return "HARNACK";
    case InequalityId::LEM33: return "LEM33";
    case InequalityId::LEM35: return "LEM35";
    case InequalityId::LEM36: return "LEM36";
    case InequalityId::LEM42: return "LEM42";
    case InequalityId::LEM43: return "LEM43";
    case InequalityId::LIP_EQ: return "LIP-EQ";
    }
    return "?";
}

void InequalityReport::add(std::string params, double value, std::optional<double> row_bound) {
    Measurement m;
    m.params = std::move(params);
    m.value = value;
    m.bound = row_bound;
    if (row_bound) m.pass = value <= *row_bound;
    rows.push_back(std::move(m));
}

void InequalityReport::finish() {
    measured = 0.0;
    bool any_bound = false;
    bool all_pass = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        measured = (i == 0) ? rows[i].value : std::max(measured, rows[i].value);
        if (rows[i].pass) {
            any_bound = true;
            all_pass = all_pass && *rows[i].pass;
        }
    }
    if (any_bound) pass = all_pass;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string pass_cell(const std::optional<bool>& pass) {
    if (!pass) return "";
    return *pass ? "true" : "false";
}

std::string summary_bound(const InequalityReport& r) {
    if (r.bound) return format_number(*r.bound);
    return r.pass ? "per-row" : "unspecified C(D)";
}

} // namespace

void write_csv(std::ostream& out, const std::vector<InequalityReport>& reports, const std::string& config_json) {
    if (!config_json.empty()) out << "# config: " << config_json << "\n";
    out << "inequality_id,graph,sample,params,measured,bound,pass\n";
    for (const auto& r : reports) {
        const std::string head = std::string(to_string(r.id)) + "," + csv_cell(r.graph) + "," + csv_cell(r.sample) + ",";
        for (const auto& m : r.rows) {
            out << head << csv_cell(m.params) << "," << format_number(m.value) << ","
                << (m.bound ? format_number(*m.bound) : "unspecified C(D)") << "," << pass_cell(m.pass) << "\n";
        }
        std::string summary = "summary";
        if (!r.note.empty()) summary += ";" + r.note;
        out << head << csv_cell(summary) << "," << format_number(r.measured) << ","
            << summary_bound(r) << "," << pass_cell(r.pass) << "\n";
    }
}

void write_json(std::ostream& out, const std::vector<InequalityReport>& reports, const std::string& config_json) {
    using nlohmann::ordered_json;
    ordered_json doc = ordered_json::object();
    if (!config_json.empty()) doc["config"] = ordered_json::parse(config_json);
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json item = ordered_json::object();
        item["inequality_id"] = to_string(r.id);
        item["graph"] = r.graph;
        item["sample"] = r.sample;
        item["measured"] = r.measured;
        item["bound"] = r.bound ? ordered_json(*r.bound) : ordered_json(summary_bound(r));
        item["pass"] = r.pass ? ordered_json(*r.pass) : ordered_json(nullptr);
        if (!r.note.empty()) item["note"] = r.note;
        ordered_json rows = ordered_json::array();
        for (const auto& m : r.rows) {
            ordered_json row = ordered_json::object();
            row["params"] = m.params;
            row["measured"] = m.value;
            row["bound"] = m.bound ? ordered_json(*m.bound) : ordered_json("unspecified C(D)");
            row["pass"] = m.pass ? ordered_json(*m.pass) : ordered_json(nullptr);
            rows.push_back(std::move(row));
        }
        item["rows"] = std::move(rows);
        list.push_back(std::move(item));
    }
    doc["reports"] = std::move(list);
    out << doc.dump(1) << "\n";
}

} // namespace semiplanar
