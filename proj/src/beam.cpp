#include "piezobeam/beam.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "piezobeam/errors.hpp"

namespace piezobeam {

Beam make_beam(const Section& s, Closure c, double length, Boundary boundary)
{
    if (!(length > 0.0)) {
        throw InputError("beam length must be positive");
    }
    Beam b;
    b.section = reduce_section(s, c);
    b.mass_per_length = s.mass_per_length();
    b.length = length;
    b.boundary = boundary;
    return b;
}

GeneralizedState free_actuation_state(const SectionConstitutive& k, const Eigen::VectorXd& V)
{
    if (V.size() != k.terminals()) {
        throw InputError(fmt::format("expected {} voltages, got {}", k.terminals(), V.size()));
    }
    Eigen::FullPivLU<Eigen::Matrix2d> lu(k.Kmm);
    if (!lu.isInvertible()) {
        throw ComputationError("degenerate section");
    }
    const Eigen::Vector2d x = lu.solve(-(k.Kme * V));
    return {x(0), x(1), V};
}

double cantilever_tip_deflection(const Beam& b, const Eigen::VectorXd& V)
{
    if (b.boundary != Boundary::Cantilever) {
        throw InputError("tip deflection requires a cantilever");
    }
    const GeneralizedState st = free_actuation_state(b.section, V);
    return 0.5 * st.kappa * b.length * b.length;
}

Eigen::VectorXd sensor_charge(const SectionConstitutive& k, double eps, double kappa)
{
    return k.Kme.transpose() * Eigen::Vector2d(eps, kappa);
}

double effective_bending_stiffness(const SectionConstitutive& k, Circuit circuit)
{
    Eigen::Matrix2d kmm = k.Kmm;
    if (circuit == Circuit::Open && k.terminals() > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(k.Cq);
        if (llt.info() != Eigen::Success) {
            throw ComputationError("capacitance matrix is not positive definite");
        }
        kmm += k.Kme * llt.solve(k.Kme.transpose());
    }
    if (!(kmm(0, 0) > 0.0)) {
        throw ComputationError("degenerate section");
    }
    return kmm(1, 1) - kmm(0, 1) * kmm(0, 1) / kmm(0, 0);
}

double boundary_eigenvalue(Boundary boundary, int mode)
{
    if (mode < 1) {
        throw InputError("mode numbers start at 1");
    }
    if (boundary == Boundary::SimplySupported) {
        return mode * std::numbers::pi;
    }
    // cantilever: cos(l) cosh(l) = -1, written as cos(l) + sech(l) = 0 to stay finite
    double lambda = std::numbers::pi * (mode - 0.5);
    for (int it = 0; it < 50; ++it) {
        const double sech = 1.0 / std::cosh(lambda);
        const double f = std::cos(lambda) + sech;
        const double df = -std::sin(lambda) - sech * std::tanh(lambda);
        const double step = f / df;
        lambda -= step;
        if (std::abs(step) <= 1e-15 * lambda) {
            break;
        }
    }
    return lambda;
}

std::vector<double> modal_frequencies(const Beam& b, Circuit circuit, int modes)
{
    if (modes < 1) {
        throw InputError("at least one mode is required");
    }
    if (!(b.mass_per_length > 0.0) || !(b.length > 0.0)) {
        throw InputError("beam mass per length and length must be positive");
    }
    const double d_eff = effective_bending_stiffness(b.section, circuit);
    const double root = std::sqrt(d_eff / (b.mass_per_length * std::pow(b.length, 4)));

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(modes));
    for (int n = 1; n <= modes; ++n) {
        const double lambda = boundary_eigenvalue(b.boundary, n);
        out.push_back(lambda * lambda / (2.0 * std::numbers::pi) * root);
    }
    return out;
}

double coupling_factor(const Beam& b, int mode)
{
    boundary_eigenvalue(b.boundary, mode);
    // f^2 is proportional to D_eff with the same factor in both circuits
    const double d_short = effective_bending_stiffness(b.section, Circuit::Short);
    const double d_open = effective_bending_stiffness(b.section, Circuit::Open);
    return (d_open - d_short) / d_short;
}

} // namespace piezobeam
