#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace piezobeam {

// Voigt order used everywhere: (11, 22, 33, 23, 13, 12).
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix36 = Eigen::Matrix<double, 3, 6>;
using Matrix3 = Eigen::Matrix3d;

inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m

/// Piezoelectric material in stress-charge (e) form.
///
/// T = cE S - e^T E,  D = e S + epsS E.
/// A purely elastic material has e == 0.
struct Material3D {
    std::string name;
    Matrix6 cE = Matrix6::Zero();   // Pa
    Matrix36 e = Matrix36::Zero();  // C/m^2
    Matrix3 epsS = Matrix3::Zero(); // F/m
    double density = 0.0;           // kg/m^3
    std::string provenance;

    bool is_piezoelectric() const { return e.cwiseAbs().maxCoeff() > 0.0; }
};

/// Piezoelectric material in strain-charge (d) form, as published in datasheets.
///
/// S = sE T + d^T E,  D = d T + epsT E.
struct MaterialDForm {
    std::string name;
    Matrix6 sE = Matrix6::Zero();   // 1/Pa
    Matrix36 d = Matrix36::Zero();  // m/V
    Matrix3 epsT = Matrix3::Zero(); // F/m
    double density = 0.0;           // kg/m^3
    std::string provenance;
};

/// In-plane constants left after enforcing T33 = T13 = T23 = 0 with E3 kept
/// as the only electric field component.
///
///   T11 = Q11 S11 + Q12 S22 - e31 E3
///   T22 = Q12 S11 + Q22 S22 - e32 E3
///   D3  = e31 S11 + e32 S22 + eps33 E3
struct PlaneMaterial {
    double Q11 = 0.0, Q12 = 0.0, Q22 = 0.0; // Pa
    double e31 = 0.0, e32 = 0.0;            // C/m^2
    double eps33 = 0.0;                     // F/m
    double density = 0.0;                   // kg/m^3

    bool is_piezoelectric() const { return e31 != 0.0 || e32 != 0.0; }
};

/// Throws InputError("invalid material <name>: <reason>") on the first violated invariant.
void validate(const Material3D& m);
void validate(const MaterialDForm& m);

Material3D convert_d_to_e(const MaterialDForm& m);
PlaneMaterial condense_to_plane(const Material3D& m);

/// Isotropic elastic solid with a scalar relative permittivity.
Material3D isotropic_elastic(std::string name, double youngs_modulus, double poisson_ratio,
                             double density, double relative_permittivity = 1.0,
                             std::string provenance = {});

/// One database entry. The source d-form record is kept when the file gave one.
struct MaterialRecord {
    Material3D material;
    std::optional<MaterialDForm> d_form;
};

class MaterialDb {
public:
    /// Built-in records only ("PZT-5H", "Al-6061").
    static MaterialDb builtin();

    /// Built-ins overlaid with the records of a JSON document. See docs/material_schema.md.
    static MaterialDb from_json_text(std::string_view text);

    const MaterialRecord& record(const std::string& name) const;
    const Material3D& get(const std::string& name) const { return record(name).material; }
    PlaneMaterial plane(const std::string& name) const { return condense_to_plane(get(name)); }
    bool contains(const std::string& name) const { return records_.count(name) != 0; }
    std::vector<std::string> names() const;

    /// Non-fatal notes collected while loading (e.g. a built-in shadowed by the file).
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::map<std::string, MaterialRecord> records_;
    std::vector<std::string> warnings_;
};

MaterialDb load_material_db(const std::string& path);

/// JSON text of the built-in records; also the canonical schema example.
std::string builtin_material_json();

} // namespace piezobeam
