#include "semiplanar/field_io.hpp"

#include "semiplanar/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace semiplanar {

using nlohmann::json;

ScalarField parse_field(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("field file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
        throw Error(ErrorKind::Parse, "field file: expected an object with a \"values\" array");
    }
    ScalarField f;
    const auto& values = doc["values"];
    f.values.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].is_null()) {
            f.values.push_back(kUndefined);
        } else if (values[i].is_number()) {
            f.values.push_back(values[i].get<double>());
        } else {
            throw Error(ErrorKind::Parse, "values[" + std::to_string(i) + "]: expected a number or null");
        }
    }
    if (doc.contains("domain")) {
        const auto& d = doc["domain"];
        const std::string kind = d.value("kind", "full");
        if (kind == "ball") {
            f.domain.kind = FieldDomain::Kind::Ball;
            f.domain.center = d.value("center", 0);
            f.domain.radius = d.value("radius", 0);
        } else if (kind != "full") {
            throw Error(ErrorKind::Parse, "domain.kind: expected \"full\" or \"ball\"");
        }
    }
    return f;
}

ScalarField load_field(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open field file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_field(buffer.str());
}

std::string serialize_field(const ScalarField& f, std::string_view config_json) {
    json doc = json::object();
    if (!config_json.empty()) doc["config"] = json::parse(config_json);
    json values = json::array();
    for (double v : f.values) {
        if (std::isnan(v)) {
            values.push_back(nullptr);
        } else {
            values.push_back(v);
        }
    }
    doc["values"] = std::move(values);
    if (f.domain.kind == FieldDomain::Kind::Ball) {
        doc["domain"] = {{"kind", "ball"}, {"center", f.domain.center}, {"radius", f.domain.radius}};
    } else {
        doc["domain"] = {{"kind", "full"}};
    }
    return doc.dump(1) + "\n";
}

void save_field(const std::filesystem::path& path, const ScalarField& f, std::string_view config_json) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write field file " + path.string());
    out << serialize_field(f, config_json);
}

} // namespace semiplanar
