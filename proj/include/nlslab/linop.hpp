#pragma once
#include "nlslab/grid.hpp"

namespace nlslab {

// Linearization around phi = phi_omega in the two-component frame U = (u, ubar):
//   (H U)_1 = (-dxx + omega) u - phi^2 (2u + ub)
//   (H U)_2 = ( dxx - omega) ub + phi^2 (u + 2ub)
VectorField apply_H(double omega, const VectorField& U);

// Generalized kernel, j = 1..4:
//   Y1 = (i phi, -i phi)        H Y1 = 0
//   Y2 = (dw phi, dw phi)       H Y2 = i Y1
//   Y3 = (dx phi, dx phi)       H Y3 = 0
//   Y4 = (i x phi, -i x phi)    H Y4 = -2 i Y3
VectorField eigenfunction_Y(double omega, int j, const GridPtr& g);

// omega-derivative of Y_j at fixed grid point, closed forms.
VectorField eigenfunction_dY_domega(double omega, int j, const GridPtr& g);

// Edge-of-spectrum resonances, H Phi_s = s omega Phi_s for s = +1/-1:
//   Phi_+ = (tanh^2(rx), -sech^2(rx)) / sqrt(2 pi), r = sqrt(omega); Phi_- = s1 Phi_+.
VectorField resonance_Phi(double omega, int sign, const GridPtr& g);

struct DiscreteCoefficients {
    cplx d[4] = {0.0, 0.0, 0.0, 0.0};
};

// Coefficients of U along the generalized kernel, via the s2 duality pairings:
//   d1 = <U, s2 Y2>/<Y1, s2 Y2>, d2 = <U, s2 Y1>/<Y2, s2 Y1>,
//   d3 = <U, s2 Y4>/<Y3, s2 Y4>, d4 = <U, s2 Y3>/<Y4, s2 Y3>.
DiscreteCoefficients discrete_coefficients(const VectorField& U, double omega);

VectorField project_discrete(const VectorField& U, double omega,
                             DiscreteCoefficients* coeffs = nullptr);
VectorField project_essential(const VectorField& U, double omega);

// Split-step propagator for dU/dt = i H(omega) U, the quadrature-side route to
// the spectral phases e^{+-i t (xi^2 + omega)}.
VectorField propagate_linearized(const VectorField& U0, double omega, double t, double dt);

} // namespace nlslab
