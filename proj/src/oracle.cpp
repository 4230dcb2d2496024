// Discretized mixed-energy route to the section constitutive matrix.
//
// Unknowns: the generalized state x = (eps, kappa, V...) and, per sublayer,
// nodal values of a linear T22. Eliminating S22 through
//   S22 = (T22 - Q12 S11 + e32 E3) / Q22
// turns the electric enthalpy into the mixed density
//   psi = H(S11, S22, E3) - T22 S22,
// whose stationarity in T22 returns S22 = 0 (free T22), and whose value at
// T22 = 0 is the pointwise-condensed enthalpy. Adding b * (l1 int T22 + l2 int z T22)
// makes S22 = l1 + l2 z the stationarity condition, so the multipliers are
// the NSR transverse field.

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "piezobeam/errors.hpp"
#include "piezobeam/section.hpp"

namespace piezobeam {

namespace {

struct SliceBlocks {
    Eigen::Matrix2d tt;  // T22-T22 block
    Eigen::MatrixXd tx;  // 2 x nx
    Eigen::Matrix2d con; // resultant constraints acting on the two T22 nodes
};

} // namespace

OracleResult discretized_oracle(const Section& s, Closure c, int sublayers)
{
    if (sublayers < 1) {
        throw InputError("oracle needs at least one sublayer per layer");
    }

    const int nx = 2 + s.terminal_count;
    const int nu = nx + 2;
    const double gauss = 1.0 / std::sqrt(3.0);

    Eigen::MatrixXd xx = Eigen::MatrixXd::Zero(nx, nx);
    std::vector<SliceBlocks> slices;
    slices.reserve(s.layers.size() * static_cast<std::size_t>(sublayers));

    for (std::size_t k = 0; k < s.layers.size(); ++k) {
        const Layer& layer = s.layers[k];
        const PlaneMaterial& m = layer.material;
        const double zb = s.interfaces[k];
        const double h = layer.thickness;
        const int terminal = s.terminal_of_layer[k];

        for (int j = 0; j < sublayers; ++j) {
            const double z0 = zb + h * j / sublayers;
            const double z1 = zb + h * (j + 1) / sublayers;
            const double hs = z1 - z0;
            const double mid = 0.5 * (z0 + z1);

            Eigen::MatrixXd slice = Eigen::MatrixXd::Zero(nu, nu);
            Eigen::Matrix2d con = Eigen::Matrix2d::Zero();

            for (double xi : {-gauss, gauss}) {
                const double z = mid + 0.5 * hs * xi;
                const double w = 0.5 * hs * s.width;

                Eigen::RowVectorXd s11 = Eigen::RowVectorXd::Zero(nu);
                s11(0) = 1.0;
                s11(1) = z;

                Eigen::RowVectorXd e3 = Eigen::RowVectorXd::Zero(nu);
                if (terminal >= 0) {
                    e3(2 + terminal) = -layer.poling / h;
                }

                Eigen::RowVectorXd t22 = Eigen::RowVectorXd::Zero(nu);
                t22(nx) = (z1 - z) / hs;
                t22(nx + 1) = (z - z0) / hs;

                const Eigen::RowVectorXd s22 = (t22 - m.Q12 * s11 + m.e32 * e3) / m.Q22;

                auto sym = [](const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) -> Eigen::MatrixXd {
                    return a.transpose() * b + b.transpose() * a;
                };
                slice += w * (m.Q11 * s11.transpose() * s11 + m.Q12 * sym(s11, s22) +
                              m.Q22 * s22.transpose() * s22 - m.e31 * sym(e3, s11) - m.e32 * sym(e3, s22) -
                              m.eps33 * e3.transpose() * e3 - sym(t22, s22));

                con.row(0) += w * t22.tail<2>();
                con.row(1) += w * z * t22.tail<2>();
            }

            xx += slice.topLeftCorner(nx, nx);
            slices.push_back({slice.bottomRightCorner<2, 2>(), slice.bottomLeftCorner(2, nx), con});
        }
    }

    OracleResult result;
    result.multipliers = Eigen::MatrixX2d::Zero(nx, 2);
    Eigen::MatrixXd hessian = xx;

    if (c == Closure::ND) {
        for (const SliceBlocks& b : slices) {
            hessian -= b.tx.transpose() * b.tt.inverse() * b.tx;
        }
    } else if (c == Closure::NSR) {
        // [tt  con^T] [Y     ]   [tx]
        // [con   0  ] [Lambda] = [0 ]   solved slice-wise through the 2 x 2 Schur system.
        Eigen::Matrix2d schur = Eigen::Matrix2d::Zero();
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2, nx);
        for (const SliceBlocks& b : slices) {
            const Eigen::Matrix2d inv = b.tt.inverse();
            schur += b.con * inv * b.con.transpose();
            rhs += b.con * inv * b.tx;
        }
        Eigen::FullPivLU<Eigen::Matrix2d> lu(schur);
        if (!lu.isInvertible()) {
            throw ComputationError("oracle constraint system is singular");
        }
        const Eigen::MatrixXd lambda = lu.solve(rhs);
        for (const SliceBlocks& b : slices) {
            const Eigen::MatrixXd y = b.tt.inverse() * (b.tx - b.con.transpose() * lambda);
            hessian -= b.tx.transpose() * y;
        }
        result.multipliers = -lambda.transpose();
    }

    hessian.bottomRightCorner(s.terminal_count, s.terminal_count) *= -1.0;
    result.constitutive = SectionConstitutive::from_full(hessian);
    return result;
}

} // namespace piezobeam
