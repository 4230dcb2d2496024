#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "piezobeam/errors.hpp"
#include "piezobeam/materials.hpp"

namespace piezobeam {

namespace {

using nlohmann::json;

template <int Rows, int Cols>
Eigen::Matrix<double, Rows, Cols> read_matrix(const json& entry, const char* key, const std::string& name)
{
    if (!entry.contains(key)) {
        throw InputError(fmt::format("invalid material {}: missing \"{}\"", name, key));
    }
    const json& rows = entry.at(key);
    if (!rows.is_array() || rows.size() != Rows) {
        throw InputError(fmt::format("invalid material {}: \"{}\" must have {} rows", name, key, Rows));
    }
    Eigen::Matrix<double, Rows, Cols> out;
    for (int i = 0; i < Rows; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != Cols) {
            throw InputError(
                fmt::format("invalid material {}: \"{}\" row {} must have {} entries", name, key, i, Cols));
        }
        for (int j = 0; j < Cols; ++j) {
            if (!row[j].is_number()) {
                throw InputError(fmt::format("invalid material {}: \"{}\"[{}][{}] is not a number", name, key, i, j));
            }
            out(i, j) = row[j].get<double>();
        }
    }
    return out;
}

MaterialRecord parse_record(const json& entry)
{
    if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string()) {
        throw InputError("malformed database: every material needs a string \"name\"");
    }
    const std::string name = entry.at("name").get<std::string>();
    const std::string form = entry.value("form", std::string{});
    if (!entry.contains("density_kg_m3") || !entry.at("density_kg_m3").is_number()) {
        throw InputError(fmt::format("invalid material {}: missing \"density_kg_m3\"", name));
    }
    const double density = entry.at("density_kg_m3").get<double>();
    const std::string provenance = entry.value("provenance", std::string{});

    MaterialRecord record;
    if (form == "e") {
        Material3D m;
        m.name = name;
        m.cE = read_matrix<6, 6>(entry, "cE", name);
        m.e = read_matrix<3, 6>(entry, "e", name);
        m.epsS = read_matrix<3, 3>(entry, "epsS", name);
        m.density = density;
        m.provenance = provenance;
        validate(m);
        record.material = std::move(m);
    } else if (form == "d") {
        MaterialDForm m;
        m.name = name;
        m.sE = read_matrix<6, 6>(entry, "sE", name);
        m.d = read_matrix<3, 6>(entry, "d", name);
        m.epsT = read_matrix<3, 3>(entry, "epsT", name);
        m.density = density;
        m.provenance = provenance;
        validate(m);
        record.material = convert_d_to_e(m);
        validate(record.material);
        record.d_form = std::move(m);
    } else {
        throw InputError(fmt::format("invalid material {}: \"form\" must be \"e\" or \"d\"", name));
    }
    return record;
}

std::vector<MaterialRecord> parse_document(std::string_view text)
{
    std::vector<MaterialRecord> out;
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return out;
    }
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& err) {
        throw InputError(fmt::format("malformed database: {}", err.what()));
    }
    if (!doc.is_object() || !doc.contains("materials") || !doc.at("materials").is_array()) {
        throw InputError("malformed database: top-level \"materials\" array required");
    }

    std::set<std::string> seen;
    for (const json& entry : doc.at("materials")) {
        MaterialRecord record = parse_record(entry);
        if (!seen.insert(record.material.name).second) {
            throw InputError(fmt::format("malformed database: duplicate material \"{}\"", record.material.name));
        }
        out.push_back(std::move(record));
    }
    return out;
}

} // namespace

MaterialDb MaterialDb::builtin()
{
    MaterialDb db;
    for (MaterialRecord& record : parse_document(builtin_material_json())) {
        std::string name = record.material.name;
        db.records_.emplace(std::move(name), std::move(record));
    }
    return db;
}

MaterialDb MaterialDb::from_json_text(std::string_view text)
{
    MaterialDb db = builtin();
    const MaterialDb defaults = builtin();
    for (MaterialRecord& record : parse_document(text)) {
        const std::string name = record.material.name;
        if (defaults.contains(name)) {
            db.warnings_.push_back(fmt::format("material \"{}\" from file shadows the built-in record", name));
        }
        db.records_.insert_or_assign(name, std::move(record));
    }
    return db;
}

const MaterialRecord& MaterialDb::record(const std::string& name) const
{
    auto it = records_.find(name);
    if (it == records_.end()) {
        throw InputError(fmt::format("unknown material \"{}\"", name));
    }
    return it->second;
}

std::vector<std::string> MaterialDb::names() const
{
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& [name, record] : records_) {
        out.push_back(name);
    }
    return out;
}

MaterialDb load_material_db(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open material database \"{}\"", path));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return MaterialDb::from_json_text(buffer.str());
}

} // namespace piezobeam
