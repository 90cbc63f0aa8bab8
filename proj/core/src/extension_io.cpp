#include "semiplanar/error.hpp"
#include "semiplanar/extension.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace semiplanar {

using nlohmann::json;

ExtendedField parse_extended(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("extended field: ") + e.what());
    }
    try {
        ExtendedField out;
        out.order = doc.at("K").get<int>();
        out.samples = doc.value("M", kDefaultSamples);
        for (const auto& entry : doc.at("faces")) {
            FaceFourier ff;
            ff.face = entry.at("id").get<FaceId>();
            ff.n = entry.at("n").get<int>();
            ff.vertex_values = entry.at("values").get<std::vector<double>>();
            ff.series.radius = face_geometry(ff.n).circumradius;
            ff.series.a0 = entry.at("a0").get<double>();
            ff.series.a = entry.at("a").get<std::vector<double>>();
            ff.series.b = entry.at("b").get<std::vector<double>>();
            if (ff.face < 0 || static_cast<int>(ff.vertex_values.size()) != ff.n ||
                ff.series.a.size() != static_cast<std::size_t>(out.order) || ff.series.b.size() != ff.series.a.size()) {
                throw Error(ErrorKind::Parse, "extended field: inconsistent entry for face " + std::to_string(ff.face));
            }
            if (static_cast<std::size_t>(ff.face) >= out.faces.size()) out.faces.resize(ff.face + 1);
            out.faces[ff.face] = std::move(ff);
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("extended field: ") + e.what());
    }
}

ExtendedField load_extended(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open extended field file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_extended(buffer.str());
}

std::string serialize_extended(const ExtendedField& field, std::string_view config_json) {
    json doc = json::object();
    if (!config_json.empty()) doc["config"] = json::parse(config_json);
    doc["K"] = field.order;
    doc["M"] = field.samples;
    json faces = json::array();
    for (const auto& ff : field.faces) {
        if (!ff) continue;
        faces.push_back({{"id", ff->face},
                         {"n", ff->n},
                         {"values", ff->vertex_values},
                         {"a0", ff->series.a0},
                         {"a", ff->series.a},
                         {"b", ff->series.b}});
    }
    doc["faces"] = std::move(faces);
    return doc.dump(1) + "\n";
}

void save_extended(const std::filesystem::path& path, const ExtendedField& field, std::string_view config_json) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write extended field file " + path.string());
    out << serialize_extended(field, config_json);
}

} // namespace semiplanar
