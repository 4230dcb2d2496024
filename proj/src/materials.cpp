#include "piezobeam/materials.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "piezobeam/errors.hpp"

namespace piezobeam {

namespace {

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a, double rel_tol = 1e-9)
{
    const double scale = a.cwiseAbs().maxCoeff();
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.eval().template cast<double>());
    if (solver.info() != Eigen::Success) {
        return false;
    }
    return solver.eigenvalues().minCoeff() > 0.0;
}

[[noreturn]] void invalid(const std::string& name, const std::string& why)
{
    throw InputError(fmt::format("invalid material {}: {}", name, why));
}

} // namespace

void validate(const Material3D& m)
{
    if (!m.cE.allFinite() || !m.e.allFinite() || !m.epsS.allFinite()) {
        invalid(m.name, "non-finite constant");
    }
    if (!is_symmetric(m.cE)) {
        invalid(m.name, "cE not symmetric");
    }
    if (!is_positive_definite(m.cE)) {
        invalid(m.name, "cE not positive definite");
    }
    if (!is_symmetric(m.epsS)) {
        invalid(m.name, "epsS not symmetric");
    }
    if (!is_positive_definite(m.epsS)) {
        invalid(m.name, "epsS not positive definite");
    }
    if (!(m.density > 0.0)) {
        invalid(m.name, "density must be positive");
    }
}

void validate(const MaterialDForm& m)
{
    if (!m.sE.allFinite() || !m.d.allFinite() || !m.epsT.allFinite()) {
        invalid(m.name, "non-finite constant");
    }
    if (!is_symmetric(m.sE)) {
        invalid(m.name, "sE not symmetric");
    }
    if (!is_positive_definite(m.sE)) {
        invalid(m.name, "sE not positive definite");
    }
    if (!is_symmetric(m.epsT)) {
        invalid(m.name, "epsT not symmetric");
    }
    if (!is_positive_definite(m.epsT)) {
        invalid(m.name, "epsT not positive definite");
    }
    if (!(m.density > 0.0)) {
        invalid(m.name, "density must be positive");
    }
}

Material3D convert_d_to_e(const MaterialDForm& m)
{
    validate(m);

    Eigen::FullPivLU<Matrix6> lu(m.sE);
    if (!lu.isInvertible()) {
        throw InputError(fmt::format("invalid material {}: non-invertible compliance", m.name));
    }

    Material3D out;
    out.name = m.name;
    out.cE = lu.inverse();
    out.cE = 0.5 * (out.cE + out.cE.transpose()).eval();
    out.e = m.d * out.cE;
    out.epsS = m.epsT - m.d * out.cE * m.d.transpose();
    out.epsS = 0.5 * (out.epsS + out.epsS.transpose()).eval();
    out.density = m.density;
    out.provenance = m.provenance;

    if (!is_positive_definite(out.epsS)) {
        throw InputError(fmt::format("invalid material {}: inconsistent constants (epsS not positive definite)", m.name));
    }
    return out;
}

PlaneMaterial condense_to_plane(const Material3D& m)
{
    const double c33 = m.cE(2, 2);
    if (!(c33 > 0.0)) {
        throw InputError(fmt::format("invalid material {}: degenerate thickness stiffness", m.name));
    }

    // T33 = 0 fixes S33 = (e33 E3 - c13 S11 - c23 S22) / c33; shears drop out.
    PlaneMaterial p;
    p.Q11 = m.cE(0, 0) - m.cE(0, 2) * m.cE(0, 2) / c33;
    p.Q12 = m.cE(0, 1) - m.cE(0, 2) * m.cE(1, 2) / c33;
    p.Q22 = m.cE(1, 1) - m.cE(1, 2) * m.cE(1, 2) / c33;
    p.e31 = m.e(2, 0) - m.e(2, 2) * m.cE(0, 2) / c33;
    p.e32 = m.e(2, 1) - m.e(2, 2) * m.cE(1, 2) / c33;
    p.eps33 = m.epsS(2, 2) + m.e(2, 2) * m.e(2, 2) / c33;
    p.density = m.density;
    return p;
}

Material3D isotropic_elastic(std::string name, double youngs_modulus, double poisson_ratio,
                             double density, double relative_permittivity, std::string provenance)
{
    const double E = youngs_modulus;
    const double nu = poisson_ratio;
    const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    const double mu = E / (2.0 * (1.0 + nu));

    Material3D m;
    m.name = std::move(name);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m.cE(i, j) = lambda;
        }
        m.cE(i, i) = lambda + 2.0 * mu;
        m.cE(i + 3, i + 3) = mu;
    }
    m.epsS = Matrix3::Identity() * relative_permittivity * kVacuumPermittivity;
    m.density = density;
    m.provenance = std::move(provenance);
    return m;
}

} // namespace piezobeam
