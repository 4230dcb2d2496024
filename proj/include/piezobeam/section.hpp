#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "piezobeam/materials.hpp"

namespace piezobeam {

// Conventions (all formulas in section.cpp derive from these):
//   z = 0 at the geometric mid-height of the stack, z increases bottom to top.
//   S11(z) = eps + z * kappa, N = b * int T11 dz, M = b * int z T11 dz.
//   In an electroded layer with poling p = +/-1 fed by terminal voltage V:
//   E3 = -p * V / h. The poling sign therefore also encodes how the layer is
//   connected to its terminal; flipping the connection is the same as flipping p.

enum class Wiring { Parallel, Independent };

/// Transverse closure fixing T22/S22, which the 1D kinematics leaves open.
///   ND:  S22 = 0 pointwise.
///   NS:  T22 = 0 pointwise.
///   NSR: int T22 dz = int z T22 dz = 0 with S22 = a + b z across the section.
enum class Closure { ND, NS, NSR };

inline constexpr Closure kAllClosures[] = {Closure::ND, Closure::NS, Closure::NSR};

std::string to_string(Closure c);
std::string to_string(Wiring w);

struct Layer {
    std::string material_name;
    PlaneMaterial material;
    double thickness = 0.0; // m
    int poling = 0;         // +1, -1, or 0 for elastic layers
    bool electroded = false;
};

struct Section {
    std::vector<Layer> layers;      // bottom to top
    double width = 0.0;             // m
    std::vector<double> interfaces; // layers.size() + 1 coordinates, m
    Wiring wiring = Wiring::Parallel;
    std::vector<int> terminal_of_layer; // -1 for layers without electrodes
    int terminal_count = 0;

    double total_thickness() const { return interfaces.back() - interfaces.front(); }
    double mass_per_length() const;
};

/// Layer as written in a layup description, before material lookup.
struct LayerSpec {
    std::string material;
    double thickness = 0.0; // m
    int poling = 0;
    bool electroded = false;
};

struct LayupSpec {
    double width = 0.0; // m
    Wiring wiring = Wiring::Parallel;
    std::vector<LayerSpec> layers;
};

/// Resolve materials and lay the stack out about mid-height. Throws InputError.
Section build_section(const LayupSpec& spec, const MaterialDb& db);

/// Same, from already condensed materials.
Section build_section(std::vector<Layer> layers, double width, Wiring wiring);

/// Coupled 1D constitutive law with T terminals:
///
///   [N]   [Kmm   Kme] [eps  ]
///   [M] = [         ] [kappa]
///   [q]   [Kme^T Cq ] [V    ]
///
/// N in N, M in N m, q in C/m. The voltage rows use the sensing sign
/// convention q = b * sum p * mean(D3) at V = 0, with the dielectric block
/// reported positive so the whole matrix is symmetric.
struct SectionConstitutive {
    Eigen::Matrix2d Kmm = Eigen::Matrix2d::Zero();
    Eigen::MatrixXd Kme; // 2 x T
    Eigen::MatrixXd Cq;  // T x T, F/m

    int terminals() const { return static_cast<int>(Cq.rows()); }
    double A() const { return Kmm(0, 0); }
    double B() const { return Kmm(0, 1); }
    double D() const { return Kmm(1, 1); }

    Eigen::MatrixXd full() const;
    static SectionConstitutive from_full(const Eigen::MatrixXd& full);
};

struct GeneralizedState {
    double eps = 0.0;   // axial strain at z = 0
    double kappa = 0.0; // 1/m
    Eigen::VectorXd V;  // one voltage per terminal

    Eigen::VectorXd stacked() const;
};

/// S22(z) = a + b z per unit generalized state. Row i of `coefficients` holds
/// (a, b) for the i-th unit component of (eps, kappa, V_0, ..., V_{T-1}).
struct TransverseField {
    Eigen::MatrixX2d coefficients;

    Eigen::Vector2d at(const GeneralizedState& state) const;
};

SectionConstitutive reduce_section(const Section& s, Closure c);
TransverseField nsr_transverse_field(const Section& s);

enum class ElectricalCondition { Blocked, Free };

/// Capacitance per unit length of one terminal, others shorted.
/// Blocked: eps and kappa held at zero. Free: N = M = 0.
double capacitance_per_length(const SectionConstitutive& k, ElectricalCondition condition, int terminal = 0);

struct LayerStress {
    double z_bottom = 0.0, z_top = 0.0;
    // T(z) = constant + slope * z, Pa and Pa/m
    double t11_constant = 0.0, t11_slope = 0.0;
    double t22_constant = 0.0, t22_slope = 0.0;

    double t11(double z) const { return t11_constant + t11_slope * z; }
    double t22(double z) const { return t22_constant + t22_slope * z; }
};

struct StressSample {
    int layer = 0;
    double z = 0.0, t11 = 0.0, t22 = 0.0;
};

struct StressProfile {
    std::vector<LayerStress> layers;
    std::vector<StressSample> samples;
    double N2 = 0.0; // N/m
    double M2 = 0.0; // N

    double max_abs_t22() const;
};

StressProfile recover_stress_profile(const Section& s, Closure c, const GeneralizedState& state,
                                     int samples_per_layer = 11);

struct TransverseResultants {
    double N2 = 0.0;
    double M2 = 0.0;
};

TransverseResultants transverse_resultants(const StressProfile& p);

struct ClosureRow {
    Closure closure = Closure::ND;
    double blocked_capacitance = 0.0; // F/m
    double free_capacitance = 0.0;    // F/m
    double A = 0.0;                   // N
    double D = 0.0;                   // N m^2, short circuit
    double gk = 0.0;                  // N m / V
    std::optional<double> deviation_percent;
};

/// One row per closure. The deviation, when a reference is given, is
/// (blocked - reference) / reference * 100 on terminal 0.
struct ComparisonTable {
    std::vector<ClosureRow> rows;
    std::optional<double> reference_capacitance; // F/m
};

ComparisonTable compare_closures(const Section& s, std::optional<double> reference_capacitance = std::nullopt);

/// Independent route to the constitutive matrix: every layer is cut into
/// `sublayers` slices carrying their own linear T22, the mixed energy is
/// integrated by Gauss quadrature, and the closure is imposed on the
/// discrete stationarity problem (free T22 for ND, T22 = 0 for NS, two
/// multipliers on the T22 resultants for NSR).
struct OracleResult {
    SectionConstitutive constitutive;
    /// NSR only: multipliers (dual to the two resultant constraints) per
    /// unit generalized state, same layout as TransverseField::coefficients.
    Eigen::MatrixX2d multipliers;
};

OracleResult discretized_oracle(const Section& s, Closure c, int sublayers);

} // namespace piezobeam
