#include <doctest.h>

#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "piezobeam/cli.hpp"
#include "piezobeam/errors.hpp"
#include "piezobeam/io.hpp"
#include "test_support.hpp"

using namespace piezobeam;
namespace fx = piezobeam::fixtures;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::string layup(const std::string& name)
{
    return testing::data_path("layups/" + name + ".json");
}

} // namespace

TEST_CASE("quantities parse into SI")
{
    CHECK(parse_quantity("100mm", Quantity::Length) == doctest::Approx(0.1));
    CHECK(parse_quantity("0.27 mm", Quantity::Length) == doctest::Approx(0.27e-3));
    CHECK(parse_quantity("2", Quantity::Length) == 2.0);
    CHECK(parse_quantity("50um", Quantity::Length) == doctest::Approx(50e-6));
    CHECK(parse_quantity("1.5kV", Quantity::Voltage) == doctest::Approx(1500.0));
    CHECK(parse_quantity("-100V", Quantity::Voltage) == -100.0);
    CHECK(parse_quantity("2.86nF/mm", Quantity::CapacitancePerLength) == doctest::Approx(2.86e-6));
    CHECK(parse_quantity("2860nF/m", Quantity::CapacitancePerLength) == doctest::Approx(2.86e-6));
    CHECK(parse_quantity("10 1/mm", Quantity::Curvature) == doctest::Approx(1e4));
    CHECK(parse_quantity("1e-3", Quantity::Curvature) == doctest::Approx(1e-3));

    CHECK_THROWS_WITH_AS(parse_quantity("3furlongs", Quantity::Length), doctest::Contains("bad unit suffix"),
                         InputError);
    CHECK_THROWS_AS(parse_quantity("100V", Quantity::Length), InputError);
    CHECK_THROWS_AS(parse_quantity("mm", Quantity::Length), InputError);
    CHECK_THROWS_AS(parse_quantity("", Quantity::Voltage), InputError);
}

TEST_CASE("layup documents")
{
    SUBCASE("shipped sandwich")
    {
        const LayupSpec spec = load_layup(layup("sandwich"));
        CHECK(spec.width == doctest::Approx(17.8e-3));
        CHECK(spec.wiring == Wiring::Parallel);
        REQUIRE(spec.layers.size() == 3);
        CHECK(spec.layers[0].poling == -1);
        CHECK(spec.layers[1].poling == 0);
        CHECK(spec.layers[2].poling == 1);
        CHECK(spec.layers[1].material == "Al-6061");
        CHECK(spec.layers[0].thickness == doctest::Approx(0.27e-3));
        CHECK(spec.layers[0].electroded);
        CHECK_FALSE(spec.layers[1].electroded);
    }

    SUBCASE("defaults")
    {
        const LayupSpec spec = parse_layup(R"({"width_mm": 5, "layers": [{"material": "Al-6061", "thickness_mm": 1}]})");
        CHECK(spec.wiring == Wiring::Parallel);
        CHECK(spec.layers[0].poling == 0);
        CHECK_FALSE(spec.layers[0].electroded);
    }

    SUBCASE("errors")
    {
        CHECK_THROWS_WITH_AS(parse_layup(R"({"width_mm": 5, "layers": []})"), "layup has no layers", InputError);
        CHECK_THROWS_AS(parse_layup(R"({"layers": [{"material": "A", "thickness_mm": 1}]})"), InputError);
        CHECK_THROWS_AS(parse_layup(R"({"width_mm": -5, "layers": [{"material": "A", "thickness_mm": 1}]})"),
                        InputError);
        CHECK_THROWS_AS(parse_layup(R"({"width_mm": 5, "layers": [{"material": "A", "thickness_mm": 1, "poling": "up"}]})"),
                        InputError);
        CHECK_THROWS_AS(
            parse_layup(R"({"width_mm": 5, "layers": [{"material": "A", "thickness_mm": 1, "electroded": "yes"}]})"),
            InputError);
        CHECK_THROWS_AS(parse_layup(R"({"width_mm": 5, "wiring": "series", "layers": []})"), InputError);
        CHECK_THROWS_AS(parse_layup("not json"), InputError);
        CHECK_THROWS_AS(load_layup("/nonexistent/layup.json"), InputError);
    }
}

TEST_CASE("argument parsing")
{
    SUBCASE("reduce with defaults")
    {
        const cli::ParseResult r = cli::parse_args({"reduce", "--layup", layup("sandwich")});
        REQUIRE(r.config.has_value());
        CHECK(r.config->command == cli::Command::Reduce);
        CHECK(r.config->closure == Closure::NSR);
        CHECK(r.config->format == cli::Format::Table);
        CHECK_FALSE(r.config->materials_path.has_value());
    }

    SUBCASE("units at the boundary")
    {
        const cli::ParseResult r = cli::parse_args({"beam-static", "--layup", layup("series_bimorph"),
                                                    "--length", "30mm", "--voltage", "50V,50V", "--model", "NS"});
        REQUIRE(r.config.has_value());
        CHECK(r.config->length.value() == doctest::Approx(0.03));
        CHECK(r.config->voltages == std::vector<double>{50.0, 50.0});
        CHECK(r.config->closure == Closure::NS);

        const cli::ParseResult c = cli::parse_args(
            {"compare", "--layup", layup("sandwich"), "--reference-capacitance", "2.86nF/mm"});
        REQUIRE(c.config.has_value());
        CHECK(c.config->reference_capacitance.value() == doctest::Approx(2.86e-6));
    }

    SUBCASE("help exits cleanly with the grammar")
    {
        const cli::ParseResult r = cli::parse_args({"--help"});
        CHECK_FALSE(r.config.has_value());
        CHECK(r.exit_code == cli::kExitOk);
        CHECK(r.message.find("compare") != std::string::npos);
        CHECK(r.message.find("beam-modal") != std::string::npos);
    }

    SUBCASE("usage errors exit with 2")
    {
        CHECK(cli::parse_args({}).exit_code == cli::kExitUsage);
        CHECK(cli::parse_args({"reduce"}).exit_code == cli::kExitUsage);
        CHECK(cli::parse_args({"reduce", "--layup", layup("sandwich"), "--model", "xx"}).exit_code ==
              cli::kExitUsage);
        const cli::ParseResult missing = cli::parse_args({"reduce", "--layup", "/nonexistent.json"});
        CHECK(missing.exit_code == cli::kExitUsage);
        CHECK(missing.message.find("layup file not found") != std::string::npos);
        const cli::ParseResult unit = cli::parse_args(
            {"beam-modal", "--layup", layup("sandwich"), "--length", "10 parsecs"});
        CHECK(unit.exit_code == cli::kExitUsage);
        CHECK(unit.message.find("bad unit suffix") != std::string::npos);
    }
}

TEST_CASE("compare output reproduces the section numbers")
{
    const Outcome table = invoke({"compare", "--layup", layup("sandwich"), "--reference-capacitance", "2.86nF/mm"});
    REQUIRE(table.code == 0);
    CHECK(table.out.find("Capacitance per unit line") != std::string::npos);
    CHECK(table.out.find(fmt::format("{:.2f} nF/mm", fx::kSandwichBlockedND)) != std::string::npos);
    CHECK(table.out.find(fmt::format("{:.2f} nF/mm", fx::kSandwichBlockedNS)) != std::string::npos);
    CHECK(table.out.find(fmt::format("{:.2f} nF/mm", fx::kSandwichBlockedNSR)) != std::string::npos);
    CHECK(table.out.find("2.86 nF/mm") != std::string::npos);

    const Outcome json = invoke({"compare", "--layup", layup("sandwich"), "--output", "json"});
    REQUIRE(json.code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc.at("schema_version") == 1);
    REQUIRE(doc.at("rows").size() == 3);
    for (const auto& row : doc.at("rows")) {
        const std::string c = row.at("closure");
        const double v = row.at("capacitance_blocked_nF_per_mm");
        const double expected = c == "ND" ? fx::kSandwichBlockedND : c == "NS" ? fx::kSandwichBlockedNS
                                                                                : fx::kSandwichBlockedNSR;
        CHECK(v == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reduce json round-trips the constitutive matrix bit for bit")
{
    for (const char* name : {"sandwich", "unimorph", "series_bimorph"}) {
        for (const char* model : {"nd", "ns", "nsr"}) {
            const Outcome o = invoke({"reduce", "--layup", layup(name), "--model", model, "--output", "json"});
            REQUIRE(o.code == 0);
            const auto doc = nlohmann::json::parse(o.out);
            const auto& m = doc.at("matrix_SI");
            const Section s = build_section(load_layup(layup(name)), MaterialDb::builtin());
            const Closure c = std::string(model) == "nd" ? Closure::ND
                              : std::string(model) == "ns" ? Closure::NS
                                                           : Closure::NSR;
            const Eigen::MatrixXd expected = reduce_section(s, c).full();
            REQUIRE(m.size() == static_cast<std::size_t>(expected.rows()));
            for (Eigen::Index r = 0; r < expected.rows(); ++r) {
                for (Eigen::Index k = 0; k < expected.cols(); ++k) {
                    CHECK(m.at(r).at(k).get<double>() == expected(r, k));
                }
            }
        }
    }
}

TEST_CASE("repeated runs produce identical bytes")
{
    for (const char* format : {"table", "json", "csv"}) {
        const std::vector<std::string> args = {"compare", "--layup", layup("sandwich"), "--output", format};
        const Outcome a = invoke(args);
        const Outcome b = invoke(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("every command runs on the shipped layups")
{
    const std::string s = layup("sandwich");
    CHECK(invoke({"reduce", "--layup", s, "--output", "csv"}).code == 0);
    CHECK(invoke({"stress", "--layup", s, "--kappa", "0.01", "--voltage", "100V"}).code == 0);
    CHECK(invoke({"capacitance", "--layup", s, "--condition", "free", "--output", "json"}).code == 0);
    CHECK(invoke({"beam-static", "--layup", s, "--length", "100mm", "--voltage", "100"}).code == 0);
    CHECK(invoke({"beam-modal", "--layup", s, "--length", "100mm", "--modes", "3", "--circuit", "open"}).code == 0);
    CHECK(invoke({"reduce", "--layup", s, "--materials", testing::data_path("materials.json")}).code == 0);
}

TEST_CASE("stress csv under NS has zero T22")
{
    const Outcome o = invoke({"stress", "--layup", layup("unimorph"), "--model", "ns", "--kappa", "0.2", "--eps",
                              "1e-4", "--voltage", "100", "--output", "csv"});
    REQUIRE(o.code == 0);
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "layer,z_mm,T11_Pa,T22_Pa");
    int rows = 0;
    while (std::getline(in, line)) {
        const std::string t22 = line.substr(line.rfind(',') + 1);
        CHECK(std::stod(t22) == 0.0);
        ++rows;
    }
    CHECK(rows == 22);
}

TEST_CASE("run-time errors map to exit codes")
{
    // wrong number of voltages for an independent layup is an input error
    const Outcome v = invoke({"beam-static", "--layup", layup("series_bimorph"), "--length", "30mm", "--voltage",
                              "1,2,3"});
    CHECK(v.code == cli::kExitUsage);
    CHECK_FALSE(v.err.empty());

    const Outcome t = invoke({"capacitance", "--layup", layup("sandwich"), "--terminal", "4"});
    CHECK(t.code == cli::kExitUsage);

    const Outcome h = invoke({"--help"});
    CHECK(h.code == cli::kExitOk);
}
