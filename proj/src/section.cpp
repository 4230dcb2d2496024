#include "piezobeam/section.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "piezobeam/errors.hpp"

namespace piezobeam {

std::string to_string(Closure c)
{
    switch (c) {
    case Closure::ND:
        return "ND";
    case Closure::NS:
        return "NS";
    case Closure::NSR:
        return "NSR";
    }
    return "?";
}

std::string to_string(Wiring w)
{
    return w == Wiring::Parallel ? "parallel" : "independent";
}

double Section::mass_per_length() const
{
    double m = 0.0;
    for (const Layer& layer : layers) {
        m += layer.material.density * layer.thickness;
    }
    return width * m;
}

// ============================================================================
// Section construction
// ============================================================================

Section build_section(std::vector<Layer> layers, double width, Wiring wiring)
{
    if (layers.empty()) {
        throw InputError("layup has no layers");
    }
    if (!(width > 0.0)) {
        throw InputError("section width must be positive");
    }

    Section s;
    s.width = width;
    s.wiring = wiring;

    double total = 0.0;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const Layer& layer = layers[k];
        const std::string where = fmt::format("layer {} ({})", k, layer.material_name);
        if (!(layer.thickness > 0.0)) {
            throw InputError(where + ": thickness must be positive");
        }
        if (layer.poling != 0 && layer.poling != 1 && layer.poling != -1) {
            throw InputError(where + ": poling must be +1, -1 or 0");
        }
        if (layer.material.is_piezoelectric() != (layer.poling != 0)) {
            throw InputError(where + (layer.poling == 0 ? ": piezoelectric layer needs a poling direction"
                                                        : ": elastic layer cannot be poled"));
        }
        if (layer.electroded && layer.poling == 0) {
            throw InputError(where + ": electroded elastic layer");
        }
        if (!(layer.material.Q11 > 0.0) || !(layer.material.Q22 > 0.0) ||
            !(layer.material.Q11 * layer.material.Q22 > layer.material.Q12 * layer.material.Q12)) {
            throw InputError(where + ": in-plane stiffness not positive definite");
        }
        if (!(layer.material.eps33 > 0.0)) {
            throw InputError(where + ": permittivity must be positive");
        }
        total += layer.thickness;
    }

    s.interfaces.reserve(layers.size() + 1);
    double z = -0.5 * total;
    s.interfaces.push_back(z);
    for (const Layer& layer : layers) {
        z += layer.thickness;
        s.interfaces.push_back(z);
    }
    s.interfaces.back() = 0.5 * total;

    s.terminal_of_layer.assign(layers.size(), -1);
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (!layers[k].electroded) {
            continue;
        }
        if (wiring == Wiring::Parallel) {
            s.terminal_of_layer[k] = 0;
            s.terminal_count = 1;
        } else {
            s.terminal_of_layer[k] = s.terminal_count++;
        }
    }

    s.layers = std::move(layers);
    return s;
}

Section build_section(const LayupSpec& spec, const MaterialDb& db)
{
    std::vector<Layer> layers;
    layers.reserve(spec.layers.size());
    for (const LayerSpec& ls : spec.layers) {
        Layer layer;
        layer.material_name = ls.material;
        layer.material = db.plane(ls.material);
        layer.thickness = ls.thickness;
        layer.poling = ls.poling;
        layer.electroded = ls.electroded;
        layers.push_back(std::move(layer));
    }
    return build_section(std::move(layers), spec.width, spec.wiring);
}

// ============================================================================
// Constitutive matrix containers
// ============================================================================

Eigen::MatrixXd SectionConstitutive::full() const
{
    const int t = terminals();
    Eigen::MatrixXd k(2 + t, 2 + t);
    k.topLeftCorner<2, 2>() = Kmm;
    k.topRightCorner(2, t) = Kme;
    k.bottomLeftCorner(t, 2) = Kme.transpose();
    k.bottomRightCorner(t, t) = Cq;
    return k;
}

SectionConstitutive SectionConstitutive::from_full(const Eigen::MatrixXd& full)
{
    if (full.rows() != full.cols() || full.rows() < 2) {
        throw InputError("constitutive matrix must be square with at least two rows");
    }
    const Eigen::Index t = full.rows() - 2;
    SectionConstitutive k;
    k.Kmm = full.topLeftCorner<2, 2>();
    k.Kme = full.topRightCorner(2, t);
    k.Cq = full.bottomRightCorner(t, t);
    return k;
}

Eigen::VectorXd GeneralizedState::stacked() const
{
    Eigen::VectorXd x(2 + V.size());
    x << eps, kappa, V;
    return x;
}

Eigen::Vector2d TransverseField::at(const GeneralizedState& state) const
{
    return coefficients.transpose() * state.stacked();
}

// ============================================================================
// Analytic reduction
// ============================================================================

namespace {

// Moments int z^k dz over one layer.
struct Moments {
    double m0, m1, m2;
};

Moments moments(double z0, double z1)
{
    return {z1 - z0, 0.5 * (z1 * z1 - z0 * z0), (z1 * z1 * z1 - z0 * z0 * z0) / 3.0};
}

// Fields of one layer for a given generalized state; every field is
// constant + slope * z, E3 is constant.
struct LayerFields {
    double s11_c = 0.0, s11_s = 0.0;
    double s22_c = 0.0, s22_s = 0.0;
    double e3 = 0.0;
};

void check_state(const Section& s, const GeneralizedState& state)
{
    if (state.V.size() != s.terminal_count) {
        throw InputError(fmt::format("state has {} voltages but the section has {} terminals", state.V.size(),
                                     s.terminal_count));
    }
}

double layer_field_e3(const Section& s, std::size_t k, const GeneralizedState& state)
{
    const int t = s.terminal_of_layer[k];
    if (t < 0) {
        return 0.0;
    }
    const Layer& layer = s.layers[k];
    return -layer.poling * state.V[t] / layer.thickness;
}

Eigen::Vector2d solve_nsr(const Section& s, const GeneralizedState& state)
{
    // int T22 dz = 0 and int z T22 dz = 0 with T22 = Q12 S11 + Q22 (a + b z) - e32 E3.
    Eigen::Matrix2d lhs = Eigen::Matrix2d::Zero();
    Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < s.layers.size(); ++k) {
        const PlaneMaterial& m = s.layers[k].material;
        const Moments mo = moments(s.interfaces[k], s.interfaces[k + 1]);
        const double e3 = layer_field_e3(s, k, state);
        lhs(0, 0) += m.Q22 * mo.m0;
        lhs(0, 1) += m.Q22 * mo.m1;
        lhs(1, 1) += m.Q22 * mo.m2;
        rhs(0) -= m.Q12 * (state.eps * mo.m0 + state.kappa * mo.m1) - m.e32 * e3 * mo.m0;
        rhs(1) -= m.Q12 * (state.eps * mo.m1 + state.kappa * mo.m2) - m.e32 * e3 * mo.m1;
    }
    lhs(1, 0) = lhs(0, 1);

    Eigen::FullPivLU<Eigen::Matrix2d> lu(lhs);
    if (!lu.isInvertible()) {
        throw ComputationError("NSR closure system is singular");
    }
    return lu.solve(rhs);
}

std::vector<LayerFields> section_fields(const Section& s, Closure c, const GeneralizedState& state)
{
    Eigen::Vector2d ab = Eigen::Vector2d::Zero();
    if (c == Closure::NSR) {
        ab = solve_nsr(s, state);
    }

    std::vector<LayerFields> out(s.layers.size());
    for (std::size_t k = 0; k < s.layers.size(); ++k) {
        const PlaneMaterial& m = s.layers[k].material;
        LayerFields& f = out[k];
        f.s11_c = state.eps;
        f.s11_s = state.kappa;
        f.e3 = layer_field_e3(s, k, state);
        switch (c) {
        case Closure::ND:
            break;
        case Closure::NS:
            f.s22_c = (m.e32 * f.e3 - m.Q12 * f.s11_c) / m.Q22;
            f.s22_s = -m.Q12 * f.s11_s / m.Q22;
            break;
        case Closure::NSR:
            f.s22_c = ab(0);
            f.s22_s = ab(1);
            break;
        }
    }
    return out;
}

// A linear T22 with zero force and moment over one layer vanishes, so NSR is NS there.
Closure effective_closure(const Section& s, Closure c)
{
    return c == Closure::NSR && s.layers.size() == 1 ? Closure::NS : c;
}

GeneralizedState unit_state(const Section& s, int component)
{
    GeneralizedState st;
    st.V = Eigen::VectorXd::Zero(s.terminal_count);
    if (component == 0) {
        st.eps = 1.0;
    } else if (component == 1) {
        st.kappa = 1.0;
    } else {
        st.V(component - 2) = 1.0;
    }
    return st;
}

} // namespace

TransverseField nsr_transverse_field(const Section& s)
{
    const int n = 2 + s.terminal_count;
    TransverseField field;
    field.coefficients.resize(n, 2);
    for (int j = 0; j < n; ++j) {
        field.coefficients.row(j) = solve_nsr(s, unit_state(s, j)).transpose();
    }
    return field;
}

SectionConstitutive reduce_section(const Section& s, Closure c)
{
    c = effective_closure(s, c);
    const int n = 2 + s.terminal_count;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);

    for (int j = 0; j < n; ++j) {
        const std::vector<LayerFields> fields = section_fields(s, c, unit_state(s, j));
        for (std::size_t l = 0; l < s.layers.size(); ++l) {
            const Layer& layer = s.layers[l];
            const PlaneMaterial& m = layer.material;
            const LayerFields& f = fields[l];
            const Moments mo = moments(s.interfaces[l], s.interfaces[l + 1]);

            const double t11_c = m.Q11 * f.s11_c + m.Q12 * f.s22_c - m.e31 * f.e3;
            const double t11_s = m.Q11 * f.s11_s + m.Q12 * f.s22_s;
            k(0, j) += s.width * (t11_c * mo.m0 + t11_s * mo.m1);
            k(1, j) += s.width * (t11_c * mo.m1 + t11_s * mo.m2);

            const int t = s.terminal_of_layer[l];
            if (t >= 0) {
                const double d3_c = m.e31 * f.s11_c + m.e32 * f.s22_c + m.eps33 * f.e3;
                const double d3_s = m.e31 * f.s11_s + m.e32 * f.s22_s;
                const double mean_d3 = (d3_c * mo.m0 + d3_s * mo.m1) / mo.m0;
                k(2 + t, j) += s.width * layer.poling * mean_d3;
            }
        }
    }

    // The voltage columns above give -capacitance; flip to the positive block.
    k.bottomRightCorner(s.terminal_count, s.terminal_count) *= -1.0;
    return SectionConstitutive::from_full(k);
}

double capacitance_per_length(const SectionConstitutive& k, ElectricalCondition condition, int terminal)
{
    if (terminal < 0 || terminal >= k.terminals()) {
        throw InputError(fmt::format("terminal {} out of range (section has {})", terminal, k.terminals()));
    }
    const double blocked = k.Cq(terminal, terminal);
    if (condition == ElectricalCondition::Blocked) {
        return blocked;
    }
    Eigen::FullPivLU<Eigen::Matrix2d> lu(k.Kmm);
    if (!lu.isInvertible()) {
        throw ComputationError("degenerate section");
    }
    const Eigen::Vector2d g = k.Kme.col(terminal);
    return blocked + g.dot(lu.solve(g));
}

// ============================================================================
// Stress recovery
// ============================================================================

double StressProfile::max_abs_t22() const
{
    double out = 0.0;
    for (const LayerStress& l : layers) {
        out = std::max({out, std::abs(l.t22(l.z_bottom)), std::abs(l.t22(l.z_top))});
    }
    return out;
}

TransverseResultants transverse_resultants(const StressProfile& p)
{
    TransverseResultants r;
    for (const LayerStress& l : p.layers) {
        const Moments mo = moments(l.z_bottom, l.z_top);
        r.N2 += l.t22_constant * mo.m0 + l.t22_slope * mo.m1;
        r.M2 += l.t22_constant * mo.m1 + l.t22_slope * mo.m2;
    }
    return r;
}

StressProfile recover_stress_profile(const Section& s, Closure c, const GeneralizedState& state,
                                     int samples_per_layer)
{
    check_state(s, state);
    if (samples_per_layer < 1) {
        throw InputError("samples per layer must be at least 1");
    }
    c = effective_closure(s, c);

    const std::vector<LayerFields> fields = section_fields(s, c, state);
    StressProfile p;
    p.layers.reserve(s.layers.size());
    for (std::size_t k = 0; k < s.layers.size(); ++k) {
        const PlaneMaterial& m = s.layers[k].material;
        const LayerFields& f = fields[k];
        LayerStress l;
        l.z_bottom = s.interfaces[k];
        l.z_top = s.interfaces[k + 1];
        l.t11_constant = m.Q11 * f.s11_c + m.Q12 * f.s22_c - m.e31 * f.e3;
        l.t11_slope = m.Q11 * f.s11_s + m.Q12 * f.s22_s;
        if (c != Closure::NS) {
            l.t22_constant = m.Q12 * f.s11_c + m.Q22 * f.s22_c - m.e32 * f.e3;
            l.t22_slope = m.Q12 * f.s11_s + m.Q22 * f.s22_s;
        }
        p.layers.push_back(l);

        for (int i = 0; i < samples_per_layer; ++i) {
            const double frac = samples_per_layer == 1 ? 0.5 : static_cast<double>(i) / (samples_per_layer - 1);
            const double z = l.z_bottom + frac * (l.z_top - l.z_bottom);
            p.samples.push_back({static_cast<int>(k), z, l.t11(z), l.t22(z)});
        }
    }

    const TransverseResultants r = transverse_resultants(p);
    p.N2 = r.N2;
    p.M2 = r.M2;
    return p;
}

// ============================================================================
// Closure comparison
// ============================================================================

ComparisonTable compare_closures(const Section& s, std::optional<double> reference_capacitance)
{
    if (reference_capacitance && !(*reference_capacitance > 0.0)) {
        throw InputError("reference capacitance must be positive");
    }

    ComparisonTable table;
    table.reference_capacitance = reference_capacitance;
    for (Closure c : kAllClosures) {
        const SectionConstitutive k = reduce_section(s, c);
        ClosureRow row;
        row.closure = c;
        row.A = k.A();
        row.D = k.D();
        if (k.terminals() > 0) {
            row.blocked_capacitance = capacitance_per_length(k, ElectricalCondition::Blocked, 0);
            row.free_capacitance = capacitance_per_length(k, ElectricalCondition::Free, 0);
            row.gk = k.Kme(1, 0);
        }
        if (reference_capacitance) {
            row.deviation_percent = (row.blocked_capacitance - *reference_capacitance) / *reference_capacitance * 100.0;
        }
        table.rows.push_back(row);
    }
    return table;
}

} // namespace piezobeam
