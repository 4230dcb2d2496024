#pragma once

#include <vector>

#include <Eigen/Dense>

#include "piezobeam/section.hpp"

namespace piezobeam {

enum class Boundary { Cantilever, SimplySupported };
enum class Circuit { Short, Open };

struct Beam {
    SectionConstitutive section;
    double mass_per_length = 0.0; // kg/m
    double length = 0.0;          // m
    Boundary boundary = Boundary::Cantilever;
};

/// Uniform beam over `s` reduced with closure `c`. Throws InputError on a non-positive length.
Beam make_beam(const Section& s, Closure c, double length, Boundary boundary);

/// Force- and moment-free response to terminal voltages: Kmm [eps; kappa] = -Kme V.
GeneralizedState free_actuation_state(const SectionConstitutive& k, const Eigen::VectorXd& V);

/// Tip deflection kappa L^2 / 2 of a cantilever under uniform induced curvature.
/// Positive curvature (top fibres stretched) gives a positive value.
double cantilever_tip_deflection(const Beam& b, const Eigen::VectorXd& V);

/// Short-circuit charge per unit length, q = Kme^T [eps; kappa].
Eigen::VectorXd sensor_charge(const SectionConstitutive& k, double eps, double kappa);

/// Bending stiffness with the axial force condensed out (N = 0); open circuit
/// adds Kme Cq^-1 Kme^T before condensing.
double effective_bending_stiffness(const SectionConstitutive& k, Circuit circuit);

/// Boundary eigenvalue lambda_n (1-based) of the uniform Euler-Bernoulli beam.
double boundary_eigenvalue(Boundary boundary, int mode);

/// f_n = lambda_n^2 / (2 pi) sqrt(D_eff / (m L^4)), Hz.
std::vector<double> modal_frequencies(const Beam& b, Circuit circuit, int modes);

/// k^2 = (f_open^2 - f_short^2) / f_short^2 for mode `mode` (1-based). Both
/// frequencies share every factor except D_eff, so this is evaluated as
/// (D_open - D_short) / D_short and is the same for every mode and length.
double coupling_factor(const Beam& b, int mode);

} // namespace piezobeam
