#pragma once
#include <Eigen/Dense>

#include "nlslab/linop.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

struct FitOptions {
    double tol = 1e-10; // Linf of the four pairing residuals
    int max_iter = 50;
    int max_halvings = 8;
};

struct ModulationState {
    double t = 0.0;
    SolitonParams params;
    VectorField U; // radiation in the co-moving frame y = x - sigma
    double newton_residual = 0.0;
    double orth[4] = {0.0, 0.0, 0.0, 0.0}; // |<U, s2 Yj>| after the fit
    int iterations = 0;
    bool converged = false;
};

// Decompose psi(x) = e^{ip(x-sigma)} e^{i gamma} (phi_omega(x-sigma) + u(x-sigma))
// subject to <U, s2 Yj> = 0, by a damped Newton iteration on (omega, gamma, p, sigma).
// The Jacobian is the closed leading form plus a finite-difference correction
// frozen at the first iterate.
ModulationState fit_parameters(const ComplexField& psi, const SolitonParams& seed,
                               const FitOptions& opt = {});

struct ModulationSeries {
    std::vector<ModulationState> states;
    bool complete = true; // false when a frame failed to converge (series truncated there)

    std::vector<double> times() const;
    std::vector<double> omega() const;
    std::vector<double> gamma() const;
    std::vector<double> p() const;
    std::vector<double> sigma() const;
};

// Fit every stored frame, seeding each fit with the previous frame's parameters.
ModulationSeries track(const Trajectory& traj, const SolitonParams& seed0,
                       const FitOptions& opt = {});

// Modulation system matrix M = M1(omega) + M2(U, omega), acting on the vector
// (gdot + p^2 - omega - p sdot, omegadot, sdot - 2p, pdot). Entries are real
// for J-invariant U.
Eigen::Matrix4d assemble_M(const VectorField& U, double omega);

// N(U) = Q(U) + C(U), the quadratic-plus-cubic remainder of the linearization.
VectorField nonlinearity_N(const VectorField& U, double omega);

// Right-hand side <i N(U), s2 Yj>, j = 1..4.
Eigen::Vector4d modulation_rhs(const VectorField& U, double omega);

struct OdeResidualSeries {
    std::vector<double> t;        // interior frame times
    std::vector<double> residual; // max_j |(M g)_j - <i N, s2 Yj>| per frame
};

// Check the modulation ODEs on a tracked series using centered differences at
// the stored cadence (uniform cadence required).
OdeResidualSeries verify_modulation_odes(const ModulationSeries& s);

struct RenormalizedSeries {
    double omega_bar = 0.0, p_bar = 0.0;
    std::vector<double> t;
    std::vector<VectorField> V; // e^{i(p - p_bar) y s3} U
    std::vector<double> theta1, theta2;
    std::vector<double> theta1_dot, theta2_dot;
};

// Reference-frame change to frozen (omega_bar, p_bar) with the phase bookkeeping
//   theta1' = omega - omega_bar + (sdot - 2 p_bar)(p - p_bar) - (p - p_bar)^2
//             + (gdot + p^2 - omega - p sdot)
//   theta2' = sdot - 2 p_bar
// integrated by the trapezoid rule from the first frame (theta(0) = 0).
RenormalizedSeries renormalize(const ModulationSeries& s, double omega_bar, double p_bar);

} // namespace nlslab
