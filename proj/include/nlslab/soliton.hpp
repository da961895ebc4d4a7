#pragma once
#include "nlslab/grid.hpp"

namespace nlslab {

struct SolitonParams {
    double omega = 1.0;
    double gamma = 0.0;
    double p = 0.0;
    double sigma = 0.0;
};

// phi_omega(x) = sqrt(2 omega) sech(sqrt(omega) x), the positive even solution
// of phi'' - omega phi + phi^3 = 0, and its closed-form derivatives.
double phi_at(double omega, double x);
double dphi_dx_at(double omega, double x);
double dphi_domega_at(double omega, double x);
double d2phi_domega2_at(double omega, double x);
double dphi_domega_dx_at(double omega, double x);

ComplexField ground_state(double omega, const GridPtr& g);
ComplexField ground_state_dx(double omega, const GridPtr& g);
ComplexField ground_state_domega(double omega, const GridPtr& g);

// e^{ip(x-sigma-2pt)} ... assembled as the traveling solitary wave
//   psi(t,x) = e^{ipx} e^{i(omega-p^2)t} e^{i gamma} phi_omega(x - 2pt - sigma).
// The center is reduced mod 2L into [-L,L); *near_boundary is set when it sits
// within 5 soliton widths (5/sqrt(omega)) of the box edge.
ComplexField solitary_wave(const SolitonParams& prm, double t, const GridPtr& g,
                           bool* near_boundary = nullptr);

struct Conserved {
    double M = 0.0; // (1/2) int |psi|^2
    double P = 0.0; // (1/2) Im int dx(psi) conj(psi)
    double E = 0.0; // int (1/2)|dx psi|^2 - (1/4)|psi|^4
};

Conserved conserved_quantities(const ComplexField& psi);

} // namespace nlslab
