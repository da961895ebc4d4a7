#pragma once
#include "nlslab/grid.hpp"

namespace nlslab {

// Symmetric uniform frequency nodes on [-xi_max, xi_max] with a node at 0;
// n_xi must be odd. Quadrature in xi is the trapezoid rule on these nodes.
struct FrequencyGrid {
    int n_xi = 0;
    double xi_max = 0.0;
    double dxi = 0.0;
    std::vector<double> xi;

    double weight(int m) const { return (m == 0 || m == n_xi - 1) ? 0.5 * dxi : dxi; }
};

FrequencyGrid make_fgrid(int n_xi, double xi_max);

// Vector generalized eigenfunctions of the linearization at phi_omega:
//   m1 = (xi + i r tanh(r x))^2 / (|xi| - i r)^2,  m2 = omega sech^2(r x) / (|xi| - i r)^2,
//   Psi_+ = (m1, m2) e^{i x xi} / sqrt(2 pi),      Psi_- = s1 Psi_+,   r = sqrt(omega).
struct PsiPair {
    cplx c1, c2;
};
PsiPair psi_basis(double omega, double x, double xi, int branch);

struct DistortedSpectrum {
    double omega_bar = 0.0;
    FrequencyGrid fgrid;
    std::vector<cplx> f_plus, f_minus;
    bool boundary_warning = false;
};

// Forward transform f~+-(xi) = <F, s3 Psi+-(., xi)> by grid quadrature.
// boundary_warning is set when max |F| over |x| > 0.9 L exceeds 1e-8.
DistortedSpectrum dft_forward(const VectorField& F, double omega_bar, const FrequencyGrid& fg);

// Inverse on the essential range:
//   comp1(x) = int f~+ Psi1 dxi - int f~- Psi2 dxi
//   comp2(x) = int f~+ Psi2 dxi - int f~- Psi1 dxi
// A warning flag is returned through *xi_decay_warning when the spectrum has
// not decayed below 1e-6 of its peak at the last nodes.
VectorField dft_inverse(const DistortedSpectrum& S, const GridPtr& g,
                        bool* xi_decay_warning = nullptr);

// Diagonal flow on the spectrum: f+ -> e^{+i t (xi^2 + w)} f+, f- with the
// conjugate phase.
DistortedSpectrum propagate_spectrum(const DistortedSpectrum& S, double t);

// Pairing corrections. correction_L gives the extra term in the transform of
// s3 F: F~+[s3 F] = F~+[F] + L+, F~-[s3 F] = -F~-[F] + L-. correction_K gives
// the commutator with d/dx: F~+-[dx F] = i xi F~+-[F] + K+-. The sign of K is
// fixed so this identity holds.
std::vector<cplx> correction_L(const VectorField& F, double omega, const FrequencyGrid& fg,
                               int branch);
std::vector<cplx> correction_K(const VectorField& F, double omega, const FrequencyGrid& fg,
                               int branch);

} // namespace nlslab
