#include "piezobeam/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "piezobeam/errors.hpp"
#include "piezobeam/io.hpp"

namespace piezobeam::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

constexpr const char* kGrammar = R"(Commands:
  reduce       --layup FILE [--materials FILE] [--model nd|ns|nsr] [--output table|json|csv]
  compare      --layup FILE [--materials FILE] [--reference-capacitance C] [--output ...]
  stress       --layup FILE [--materials FILE] [--model ...] [--eps X] [--kappa K] [--voltage V[,V...]]
               [--samples N] [--output ...]
  capacitance  --layup FILE [--materials FILE] [--model ...] [--condition blocked|free] [--terminal I]
               [--output ...]
  beam-static  --layup FILE [--materials FILE] [--model ...] --length L --voltage V[,V...]
               [--bc cantilever|simply-supported] [--eps X] [--kappa K] [--output ...]
  beam-modal   --layup FILE [--materials FILE] [--model ...] --length L [--bc ...] [--modes N]
               [--circuit short|open] [--output ...]

Units: lengths m|cm|mm|um, voltages V|kV|mV, curvature 1/m|1/mm,
capacitance per length F/m|nF/m|pF/m|uF/m|nF/mm|pF/mm. Bare numbers are SI.
A single --voltage value is applied to every terminal.
Exit status: 0 success, 1 computation error, 2 usage or input error.)";

struct RawOptions {
    std::string layup;
    std::string materials;
    std::string model = "nsr";
    std::string output = "table";
    std::string length;
    std::string voltage;
    double eps = 0.0;
    std::string kappa;
    int modes = 4;
    std::string circuit = "short";
    std::string bc = "cantilever";
    std::string reference;
    std::string condition = "blocked";
    int terminal = 0;
    int samples = 11;
};

void add_common(CLI::App* sub, RawOptions& raw)
{
    sub->add_option("--layup", raw.layup, "Layup JSON file")->required();
    sub->add_option("--materials", raw.materials, "Material database JSON file");
    sub->add_option("--output", raw.output, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
}

void add_model(CLI::App* sub, RawOptions& raw)
{
    sub->add_option("--model", raw.model, "Transverse closure: nd | ns | nsr")
        ->check(CLI::IsMember({"nd", "ns", "nsr"}, CLI::ignore_case));
}

Closure closure_from(const std::string& text)
{
    const std::string t = CLI::detail::to_lower(text);
    if (t == "nd") {
        return Closure::ND;
    }
    if (t == "ns") {
        return Closure::NS;
    }
    return Closure::NSR;
}

std::vector<double> parse_voltages(const std::string& text)
{
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_quantity(item, Quantity::Voltage));
    }
    return out;
}

} // namespace

ParseResult parse_args(const std::vector<std::string>& argv)
{
    CLI::App app{"Constitutive reduction of laminated piezoelectric beams", "piezobeam"};
    app.footer(kGrammar);
    app.require_subcommand(1);

    RawOptions raw;

    auto* reduce = app.add_subcommand("reduce", "Coupled section constitutive matrix");
    add_common(reduce, raw);
    add_model(reduce, raw);

    auto* compare = app.add_subcommand("compare", "Capacitance and stiffness under ND, NS and NSR");
    add_common(compare, raw);
    compare->add_option("--reference-capacitance", raw.reference, "Measured capacitance per length, e.g. 2.86nF/mm");

    auto* stress = app.add_subcommand("stress", "Layerwise T11 and T22 profiles");
    add_common(stress, raw);
    add_model(stress, raw);
    stress->add_option("--eps", raw.eps, "Axial strain at mid-height");
    stress->add_option("--kappa", raw.kappa, "Curvature, e.g. 0.01 or 10 1/mm");
    stress->add_option("--voltage", raw.voltage, "Terminal voltages, comma separated");
    stress->add_option("--samples", raw.samples, "Sample points per layer")->check(CLI::PositiveNumber);

    auto* capacitance = app.add_subcommand("capacitance", "Capacitance per unit length of one terminal");
    add_common(capacitance, raw);
    add_model(capacitance, raw);
    capacitance->add_option("--condition", raw.condition, "blocked | free")
        ->check(CLI::IsMember({"blocked", "free"}));
    capacitance->add_option("--terminal", raw.terminal, "Terminal index")->check(CLI::NonNegativeNumber);

    auto* beam_static = app.add_subcommand("beam-static", "Free actuation, tip deflection and sensing");
    add_common(beam_static, raw);
    add_model(beam_static, raw);
    beam_static->add_option("--length", raw.length, "Beam length, e.g. 100mm")->required();
    beam_static->add_option("--voltage", raw.voltage, "Terminal voltages, comma separated")->required();
    beam_static->add_option("--bc", raw.bc, "cantilever | simply-supported")
        ->check(CLI::IsMember({"cantilever", "simply-supported"}));
    beam_static->add_option("--eps", raw.eps, "Imposed axial strain for sensing");
    beam_static->add_option("--kappa", raw.kappa, "Imposed curvature for sensing");

    auto* beam_modal = app.add_subcommand("beam-modal", "Bending frequencies and modal coupling");
    add_common(beam_modal, raw);
    add_model(beam_modal, raw);
    beam_modal->add_option("--length", raw.length, "Beam length, e.g. 100mm")->required();
    beam_modal->add_option("--bc", raw.bc, "cantilever | simply-supported")
        ->check(CLI::IsMember({"cantilever", "simply-supported"}));
    beam_modal->add_option("--modes", raw.modes, "Number of modes")->check(CLI::PositiveNumber);
    beam_modal->add_option("--circuit", raw.circuit, "short | open")->check(CLI::IsMember({"short", "open"}));

    std::vector<const char*> args;
    args.push_back("piezobeam");
    for (const std::string& a : argv) {
        args.push_back(a.c_str());
    }

    ParseResult result;
    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::CallForHelp&) {
        result.exit_code = kExitOk;
        result.message = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitUsage;
        result.message = fmt::format("usage error: {}\nRun with --help for the full grammar.", e.what());
        return result;
    }

    RunConfig cfg;
    if (reduce->parsed()) {
        cfg.command = Command::Reduce;
    } else if (compare->parsed()) {
        cfg.command = Command::Compare;
    } else if (stress->parsed()) {
        cfg.command = Command::Stress;
    } else if (capacitance->parsed()) {
        cfg.command = Command::Capacitance;
    } else if (beam_static->parsed()) {
        cfg.command = Command::BeamStatic;
    } else {
        cfg.command = Command::BeamModal;
    }

    try {
        if (!std::filesystem::is_regular_file(raw.layup)) {
            throw InputError(fmt::format("layup file not found: {}", raw.layup));
        }
        cfg.layup_path = raw.layup;
        if (!raw.materials.empty()) {
            if (!std::filesystem::is_regular_file(raw.materials)) {
                throw InputError(fmt::format("material database not found: {}", raw.materials));
            }
            cfg.materials_path = raw.materials;
        }
        cfg.closure = closure_from(raw.model);
        cfg.format = raw.output == "json" ? Format::Json : raw.output == "csv" ? Format::Csv : Format::Table;
        if (!raw.length.empty()) {
            cfg.length = parse_quantity(raw.length, Quantity::Length);
            if (!(*cfg.length > 0.0)) {
                throw InputError("--length must be positive");
            }
        }
        if (!raw.voltage.empty()) {
            cfg.voltages = parse_voltages(raw.voltage);
        }
        cfg.eps = raw.eps;
        if (!raw.kappa.empty()) {
            cfg.kappa = parse_quantity(raw.kappa, Quantity::Curvature);
        }
        cfg.modes = raw.modes;
        cfg.circuit = raw.circuit == "open" ? Circuit::Open : Circuit::Short;
        cfg.boundary = raw.bc == "simply-supported" ? Boundary::SimplySupported : Boundary::Cantilever;
        if (!raw.reference.empty()) {
            cfg.reference_capacitance = parse_quantity(raw.reference, Quantity::CapacitancePerLength);
        }
        cfg.condition = raw.condition == "free" ? ElectricalCondition::Free : ElectricalCondition::Blocked;
        cfg.terminal = raw.terminal;
        cfg.samples_per_layer = raw.samples;
    } catch (const InputError& e) {
        result.exit_code = kExitUsage;
        result.message = fmt::format("usage error: {}", e.what());
        return result;
    }

    result.config = std::move(cfg);
    return result;
}

// ============================================================================
// Report writers
// ============================================================================

namespace {

constexpr double kNanoFaradPerMm = 1e-6; // F/m

struct Context {
    MaterialDb db;
    LayupSpec layup;
    Section section;
};

Context load(const RunConfig& cfg, std::ostream& err)
{
    Context ctx{cfg.materials_path ? load_material_db(*cfg.materials_path) : MaterialDb::builtin(), {}, {}};
    for (const std::string& w : ctx.db.warnings()) {
        err << "warning: " << w << '\n';
    }
    ctx.layup = load_layup(cfg.layup_path);
    ctx.section = build_section(ctx.layup, ctx.db);
    return ctx;
}

Eigen::VectorXd terminal_voltages(const RunConfig& cfg, const Section& s)
{
    const auto n = static_cast<std::size_t>(s.terminal_count);
    Eigen::VectorXd V = Eigen::VectorXd::Zero(s.terminal_count);
    if (cfg.voltages.empty()) {
        return V;
    }
    if (cfg.voltages.size() == 1) {
        V.setConstant(cfg.voltages.front());
        return V;
    }
    if (cfg.voltages.size() != n) {
        throw InputError(fmt::format("{} voltages given but the section has {} terminals", cfg.voltages.size(), n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        V(static_cast<Eigen::Index>(i)) = cfg.voltages[i];
    }
    return V;
}

ojson header(const RunConfig& cfg, const Context& ctx, const char* command)
{
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["layup_file"] = std::filesystem::path(cfg.layup_path).filename().string();
    j["width_m"] = ctx.section.width;
    j["total_thickness_m"] = ctx.section.total_thickness();
    j["wiring"] = to_string(ctx.section.wiring);
    j["terminals"] = ctx.section.terminal_count;
    ojson layers = ojson::array();
    for (std::size_t k = 0; k < ctx.section.layers.size(); ++k) {
        const Layer& l = ctx.section.layers[k];
        layers.push_back({{"material", l.material_name},
                          {"thickness_m", l.thickness},
                          {"z_bottom_m", ctx.section.interfaces[k]},
                          {"z_top_m", ctx.section.interfaces[k + 1]},
                          {"poling", l.poling},
                          {"terminal", ctx.section.terminal_of_layer[k]}});
    }
    j["layers"] = std::move(layers);
    return j;
}

std::vector<std::string> state_labels(int terminals)
{
    std::vector<std::string> out = {"eps", "kappa_1_per_m"};
    for (int t = 0; t < terminals; ++t) {
        out.push_back(fmt::format("V{}_V", t));
    }
    return out;
}

std::vector<std::string> dual_labels(int terminals)
{
    std::vector<std::string> out = {"N_N", "M_N_m"};
    for (int t = 0; t < terminals; ++t) {
        out.push_back(fmt::format("q{}_C_per_m", t));
    }
    return out;
}

int report_reduce(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    const SectionConstitutive k = reduce_section(ctx.section, cfg.closure);
    const Eigen::MatrixXd full = k.full();
    const int n = static_cast<int>(full.rows());
    const auto cols = state_labels(k.terminals());
    const auto rows = dual_labels(k.terminals());

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "reduce");
        j["closure"] = to_string(cfg.closure);
        j["row_labels"] = rows;
        j["column_labels"] = cols;
        ojson m = ojson::array();
        for (int r = 0; r < n; ++r) {
            ojson row = ojson::array();
            for (int c = 0; c < n; ++c) {
                row.push_back(full(r, c));
            }
            m.push_back(std::move(row));
        }
        j["matrix_SI"] = std::move(m);
        j["A_N"] = k.A();
        j["B_N_m"] = k.B();
        j["D_N_m2"] = k.D();
        j["mass_per_length_kg_per_m"] = ctx.section.mass_per_length();
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cfg.format == Format::Csv) {
        out << "row";
        for (const auto& c : cols) {
            out << ',' << c;
        }
        out << '\n';
        for (int r = 0; r < n; ++r) {
            out << rows[static_cast<std::size_t>(r)];
            for (int c = 0; c < n; ++c) {
                out << fmt::format(",{:.17g}", full(r, c));
            }
            out << '\n';
        }
        return kExitOk;
    }

    out << fmt::format("Section constitutive matrix, closure {} (SI units)\n", to_string(cfg.closure));
    out << fmt::format("{:>14}", "");
    for (const auto& c : cols) {
        out << fmt::format("{:>16}", c);
    }
    out << '\n';
    for (int r = 0; r < n; ++r) {
        out << fmt::format("{:>14}", rows[static_cast<std::size_t>(r)]);
        for (int c = 0; c < n; ++c) {
            out << fmt::format("{:>16.6e}", full(r, c));
        }
        out << '\n';
    }
    out << fmt::format("\nA = {:.6g} N   B = {:.6g} N m   D = {:.6g} N m^2\n", k.A(), k.B(), k.D());
    for (int t = 0; t < k.terminals(); ++t) {
        out << fmt::format("terminal {}: blocked {:.4f} nF/mm, free {:.4f} nF/mm\n", t,
                           capacitance_per_length(k, ElectricalCondition::Blocked, t) / kNanoFaradPerMm,
                           capacitance_per_length(k, ElectricalCondition::Free, t) / kNanoFaradPerMm);
    }
    return kExitOk;
}

int report_compare(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    const ComparisonTable table = compare_closures(ctx.section, cfg.reference_capacitance);

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "compare");
        j["deviation_convention"] = "(model - reference) / reference * 100, on the blocked capacitance";
        if (table.reference_capacitance) {
            j["reference_capacitance_F_per_m"] = *table.reference_capacitance;
            j["reference_capacitance_nF_per_mm"] = *table.reference_capacitance / kNanoFaradPerMm;
        }
        ojson rows = ojson::array();
        for (const ClosureRow& r : table.rows) {
            ojson row;
            row["closure"] = to_string(r.closure);
            row["capacitance_blocked_F_per_m"] = r.blocked_capacitance;
            row["capacitance_blocked_nF_per_mm"] = r.blocked_capacitance / kNanoFaradPerMm;
            row["capacitance_free_F_per_m"] = r.free_capacitance;
            row["capacitance_free_nF_per_mm"] = r.free_capacitance / kNanoFaradPerMm;
            row["A_N"] = r.A;
            row["D_N_m2"] = r.D;
            row["gk_N_m_per_V"] = r.gk;
            if (r.deviation_percent) {
                row["deviation_percent"] = *r.deviation_percent;
            }
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cfg.format == Format::Csv) {
        out << "closure,capacitance_blocked_nF_per_mm,capacitance_free_nF_per_mm,A_N,D_N_m2,gk_N_m_per_V,"
               "deviation_percent\n";
        for (const ClosureRow& r : table.rows) {
            out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},", to_string(r.closure),
                               r.blocked_capacitance / kNanoFaradPerMm, r.free_capacitance / kNanoFaradPerMm, r.A,
                               r.D, r.gk);
            if (r.deviation_percent) {
                out << fmt::format("{:.17g}", *r.deviation_percent);
            }
            out << '\n';
        }
        return kExitOk;
    }

    const bool has_ref = table.reference_capacitance.has_value();
    out << fmt::format("{:<34}", "");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14}", to_string(r.closure) + " model");
    }
    if (has_ref) {
        out << fmt::format("{:>14}", "Reference");
    }
    out << '\n';

    out << fmt::format("{:<34}", "Capacitance per unit line");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14}", fmt::format("{:.2f} nF/mm", r.blocked_capacitance / kNanoFaradPerMm));
    }
    if (has_ref) {
        out << fmt::format("{:>14}", fmt::format("{:.2f} nF/mm", *table.reference_capacitance / kNanoFaradPerMm));
    }
    out << '\n';

    if (has_ref) {
        out << fmt::format("{:<34}", "Deviation (%)");
        for (const ClosureRow& r : table.rows) {
            out << fmt::format("{:>14}", fmt::format("{:+.2f}%", *r.deviation_percent));
        }
        out << fmt::format("{:>14}", "----") << '\n';
    }

    out << fmt::format("{:<34}", "Free capacitance (N = M = 0)");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14}", fmt::format("{:.2f} nF/mm", r.free_capacitance / kNanoFaradPerMm));
    }
    out << '\n';
    out << fmt::format("{:<34}", "Extension stiffness A [N]");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14.5e}", r.A);
    }
    out << '\n';
    out << fmt::format("{:<34}", "Bending stiffness D [N m^2]");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14.5f}", r.D);
    }
    out << '\n';
    out << fmt::format("{:<34}", "Bending coupling gk [N m/V]");
    for (const ClosureRow& r : table.rows) {
        out << fmt::format("{:>14.5e}", r.gk);
    }
    out << '\n';
    out << "\nCapacitance per unit line: terminal 0, blocked (eps = kappa = 0).\n";
    if (has_ref) {
        out << "Deviation = (model - reference) / reference x 100.\n";
    }
    return kExitOk;
}

int report_stress(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    GeneralizedState st;
    st.eps = cfg.eps;
    st.kappa = cfg.kappa;
    st.V = terminal_voltages(cfg, ctx.section);
    const StressProfile p = recover_stress_profile(ctx.section, cfg.closure, st, cfg.samples_per_layer);

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "stress");
        j["closure"] = to_string(cfg.closure);
        j["state"] = {{"eps", st.eps},
                      {"kappa_1_per_m", st.kappa},
                      {"V_V", std::vector<double>(st.V.data(), st.V.data() + st.V.size())}};
        ojson layers = ojson::array();
        for (const LayerStress& l : p.layers) {
            layers.push_back({{"z_bottom_m", l.z_bottom},
                              {"z_top_m", l.z_top},
                              {"T11_constant_Pa", l.t11_constant},
                              {"T11_slope_Pa_per_m", l.t11_slope},
                              {"T22_constant_Pa", l.t22_constant},
                              {"T22_slope_Pa_per_m", l.t22_slope}});
        }
        j["layer_coefficients"] = std::move(layers);
        ojson samples = ojson::array();
        for (const StressSample& s : p.samples) {
            samples.push_back({{"layer", s.layer}, {"z_m", s.z}, {"T11_Pa", s.t11}, {"T22_Pa", s.t22}});
        }
        j["samples"] = std::move(samples);
        j["N2_N_per_m"] = p.N2;
        j["M2_N"] = p.M2;
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cfg.format == Format::Csv) {
        out << "layer,z_mm,T11_Pa,T22_Pa\n";
        for (const StressSample& s : p.samples) {
            out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", s.layer, s.z * 1e3, s.t11, s.t22);
        }
        return kExitOk;
    }

    out << fmt::format("Stress profile, closure {}: eps = {:g}, kappa = {:g} 1/m\n", to_string(cfg.closure), st.eps,
                       st.kappa);
    out << fmt::format("{:>6}{:>14}{:>16}{:>16}\n", "layer", "z [mm]", "T11 [MPa]", "T22 [MPa]");
    for (const StressSample& s : p.samples) {
        out << fmt::format("{:>6}{:>14.5f}{:>16.6f}{:>16.6f}\n", s.layer, s.z * 1e3, s.t11 * 1e-6, s.t22 * 1e-6);
    }
    out << fmt::format("\nN2 = {:.6e} N/m   M2 = {:.6e} N\n", p.N2, p.M2);
    return kExitOk;
}

int report_capacitance(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    const SectionConstitutive k = reduce_section(ctx.section, cfg.closure);
    const double c = capacitance_per_length(k, cfg.condition, cfg.terminal);
    const char* condition = cfg.condition == ElectricalCondition::Free ? "free" : "blocked";

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "capacitance");
        j["closure"] = to_string(cfg.closure);
        j["condition"] = condition;
        j["terminal"] = cfg.terminal;
        j["capacitance_F_per_m"] = c;
        j["capacitance_nF_per_mm"] = c / kNanoFaradPerMm;
        out << j.dump(2) << '\n';
    } else if (cfg.format == Format::Csv) {
        out << "closure,condition,terminal,capacitance_F_per_m,capacitance_nF_per_mm\n";
        out << fmt::format("{},{},{},{:.17g},{:.17g}\n", to_string(cfg.closure), condition, cfg.terminal, c,
                           c / kNanoFaradPerMm);
    } else {
        out << fmt::format("{} capacitance per unit length, closure {}, terminal {}: {:.4f} nF/mm ({:.6e} F/m)\n",
                           condition, to_string(cfg.closure), cfg.terminal, c / kNanoFaradPerMm, c);
    }
    return kExitOk;
}

int report_beam_static(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    const Beam beam = make_beam(ctx.section, cfg.closure, *cfg.length, cfg.boundary);
    const Eigen::VectorXd V = terminal_voltages(cfg, ctx.section);
    const GeneralizedState st = free_actuation_state(beam.section, V);
    std::optional<double> tip;
    if (cfg.boundary == Boundary::Cantilever) {
        tip = cantilever_tip_deflection(beam, V);
    }
    const Eigen::VectorXd q = sensor_charge(beam.section, cfg.eps, cfg.kappa);

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "beam-static");
        j["closure"] = to_string(cfg.closure);
        j["length_m"] = beam.length;
        j["V_V"] = std::vector<double>(V.data(), V.data() + V.size());
        j["free_eps"] = st.eps;
        j["free_kappa_1_per_m"] = st.kappa;
        if (tip) {
            j["tip_deflection_m"] = *tip;
            j["tip_deflection_mm"] = *tip * 1e3;
        }
        j["sensing_eps"] = cfg.eps;
        j["sensing_kappa_1_per_m"] = cfg.kappa;
        j["sensor_charge_C_per_m"] = std::vector<double>(q.data(), q.data() + q.size());
        out << j.dump(2) << '\n';
    } else if (cfg.format == Format::Csv) {
        out << "quantity,value,unit\n";
        out << fmt::format("free_eps,{:.17g},1\n", st.eps);
        out << fmt::format("free_kappa,{:.17g},1/m\n", st.kappa);
        if (tip) {
            out << fmt::format("tip_deflection,{:.17g},m\n", *tip);
        }
        for (Eigen::Index t = 0; t < q.size(); ++t) {
            out << fmt::format("sensor_charge_{},{:.17g},C/m\n", t, q(t));
        }
    } else {
        out << fmt::format("Free actuation, closure {}, L = {:g} mm\n", to_string(cfg.closure), beam.length * 1e3);
        out << fmt::format("  eps   = {:.6e}\n  kappa = {:.6e} 1/m\n", st.eps, st.kappa);
        if (tip) {
            out << fmt::format("  cantilever tip deflection = {:.6e} mm\n", *tip * 1e3);
        }
        out << fmt::format("Short-circuit sensing at eps = {:g}, kappa = {:g} 1/m\n", cfg.eps, cfg.kappa);
        for (Eigen::Index t = 0; t < q.size(); ++t) {
            out << fmt::format("  terminal {}: {:.6e} C/m\n", t, q(t));
        }
    }
    return kExitOk;
}

int report_beam_modal(const RunConfig& cfg, const Context& ctx, std::ostream& out)
{
    const Beam beam = make_beam(ctx.section, cfg.closure, *cfg.length, cfg.boundary);
    const std::vector<double> f = modal_frequencies(beam, cfg.circuit, cfg.modes);
    std::vector<double> k2;
    for (int n = 1; n <= cfg.modes; ++n) {
        k2.push_back(ctx.section.terminal_count > 0 ? coupling_factor(beam, n) : 0.0);
    }
    const char* circuit = cfg.circuit == Circuit::Open ? "open" : "short";
    const char* bc = cfg.boundary == Boundary::Cantilever ? "cantilever" : "simply-supported";

    if (cfg.format == Format::Json) {
        ojson j = header(cfg, ctx, "beam-modal");
        j["closure"] = to_string(cfg.closure);
        j["length_m"] = beam.length;
        j["boundary"] = bc;
        j["circuit"] = circuit;
        j["mass_per_length_kg_per_m"] = beam.mass_per_length;
        j["frequencies_Hz"] = f;
        j["coupling_factor_squared"] = k2;
        out << j.dump(2) << '\n';
    } else if (cfg.format == Format::Csv) {
        out << "mode,frequency_Hz,k2\n";
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << fmt::format("{},{:.17g},{:.17g}\n", i + 1, f[i], k2[i]);
        }
    } else {
        out << fmt::format("Bending modes, closure {}, {} L = {:g} mm, {} circuit\n", to_string(cfg.closure), bc,
                           beam.length * 1e3, circuit);
        out << fmt::format("{:>6}{:>16}{:>14}\n", "mode", "f [Hz]", "k^2");
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << fmt::format("{:>6}{:>16.4f}{:>14.6f}\n", i + 1, f[i], k2[i]);
        }
    }
    return kExitOk;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        const Context ctx = load(cfg, err);
        switch (cfg.command) {
        case Command::Reduce:
            return report_reduce(cfg, ctx, out);
        case Command::Compare:
            return report_compare(cfg, ctx, out);
        case Command::Stress:
            return report_stress(cfg, ctx, out);
        case Command::Capacitance:
            return report_capacitance(cfg, ctx, out);
        case Command::BeamStatic:
            return report_beam_static(cfg, ctx, out);
        case Command::BeamModal:
            return report_beam_modal(cfg, ctx, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ComputationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitComputation;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    ParseResult parsed = parse_args(argv);
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace piezobeam::cli
