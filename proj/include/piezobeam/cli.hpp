#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "piezobeam/beam.hpp"
#include "piezobeam/section.hpp"

namespace piezobeam::cli {

enum class Command { Reduce, Compare, Stress, Capacitance, BeamStatic, BeamModal };
enum class Format { Table, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    Command command = Command::Reduce;
    std::string layup_path;
    std::optional<std::string> materials_path;
    Closure closure = Closure::NSR;
    Format format = Format::Table;

    std::optional<double> length;             // m
    std::vector<double> voltages;             // V; one value is applied to every terminal
    double eps = 0.0;
    double kappa = 0.0;                       // 1/m
    int modes = 4;
    Circuit circuit = Circuit::Short;
    Boundary boundary = Boundary::Cantilever;
    std::optional<double> reference_capacitance; // F/m
    ElectricalCondition condition = ElectricalCondition::Blocked;
    int terminal = 0;
    int samples_per_layer = 11;
};

/// Either a config, or a message plus exit status (0 for --help, 2 for usage errors).
struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
    std::string message;
};

ParseResult parse_args(const std::vector<std::string>& argv);

/// Executes one command; the report goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, as used by the executable.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace piezobeam::cli
