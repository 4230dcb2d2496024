#include "piezobeam/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "piezobeam/errors.hpp"

namespace piezobeam {

namespace {

using nlohmann::json;

double positive_number(const json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw InputError(fmt::format("malformed layup: {} needs numeric \"{}\"", where, key));
    }
    const double v = obj.at(key).get<double>();
    if (!(v > 0.0)) {
        throw InputError(fmt::format("malformed layup: {} \"{}\" must be positive", where, key));
    }
    return v;
}

} // namespace

LayupSpec parse_layup(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& err) {
        throw InputError(fmt::format("malformed layup: {}", err.what()));
    }
    if (!doc.is_object()) {
        throw InputError("malformed layup: top level must be an object");
    }

    LayupSpec spec;
    spec.width = positive_number(doc, "width_mm", "layup") * 1e-3;

    const std::string wiring = doc.value("wiring", std::string{"parallel"});
    if (wiring == "parallel") {
        spec.wiring = Wiring::Parallel;
    } else if (wiring == "independent") {
        spec.wiring = Wiring::Independent;
    } else {
        throw InputError(fmt::format("malformed layup: unknown wiring \"{}\"", wiring));
    }

    if (!doc.contains("layers") || !doc.at("layers").is_array() || doc.at("layers").empty()) {
        throw InputError("layup has no layers");
    }
    int index = 0;
    for (const json& entry : doc.at("layers")) {
        const std::string where = fmt::format("layer {}", index++);
        if (!entry.is_object() || !entry.contains("material") || !entry.at("material").is_string()) {
            throw InputError(fmt::format("malformed layup: {} needs a string \"material\"", where));
        }
        LayerSpec layer;
        layer.material = entry.at("material").get<std::string>();
        layer.thickness = positive_number(entry, "thickness_mm", where) * 1e-3;

        const std::string poling = entry.value("poling", std::string{"none"});
        if (poling == "+z") {
            layer.poling = 1;
        } else if (poling == "-z") {
            layer.poling = -1;
        } else if (poling == "none") {
            layer.poling = 0;
        } else {
            throw InputError(fmt::format("malformed layup: {} poling must be \"+z\", \"-z\" or \"none\"", where));
        }

        if (entry.contains("electroded")) {
            if (!entry.at("electroded").is_boolean()) {
                throw InputError(fmt::format("malformed layup: {} \"electroded\" must be a boolean", where));
            }
            layer.electroded = entry.at("electroded").get<bool>();
        }
        spec.layers.push_back(std::move(layer));
    }
    return spec;
}

LayupSpec load_layup(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open layup file \"{}\"", path));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_layup(buffer.str());
}

double parse_quantity(std::string_view text, Quantity kind)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }

    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
        throw InputError(fmt::format("bad quantity \"{}\": expected a number", text));
    }
    std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
    while (!suffix.empty() && suffix.front() == ' ') {
        suffix.remove_prefix(1);
    }
    if (suffix.empty()) {
        return value;
    }

    static const std::vector<std::pair<std::string_view, double>> lengths = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}};
    static const std::vector<std::pair<std::string_view, double>> voltages = {
        {"V", 1.0}, {"kV", 1e3}, {"mV", 1e-3}};
    static const std::vector<std::pair<std::string_view, double>> capacitances = {
        {"F/m", 1.0}, {"uF/m", 1e-6}, {"nF/m", 1e-9}, {"pF/m", 1e-12}, {"nF/mm", 1e-6}, {"pF/mm", 1e-9}};
    static const std::vector<std::pair<std::string_view, double>> curvatures = {{"1/m", 1.0}, {"1/mm", 1e3}};

    const std::vector<std::pair<std::string_view, double>>* table = nullptr;
    switch (kind) {
    case Quantity::Length:
        table = &lengths;
        break;
    case Quantity::Voltage:
        table = &voltages;
        break;
    case Quantity::CapacitancePerLength:
        table = &capacitances;
        break;
    case Quantity::Curvature:
        table = &curvatures;
        break;
    }
    for (const auto& [name, scale] : *table) {
        if (suffix == name) {
            return value * scale;
        }
    }
    throw InputError(fmt::format("bad unit suffix \"{}\" in \"{}\"", suffix, text));
}

} // namespace piezobeam
