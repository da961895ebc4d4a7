#pragma once
#include <cstdint>
#include <string>

#include "nlslab/dft.hpp"

namespace nlslab {

struct IdentityReport {
    std::string name;
    int lattice_size = 0;
    double max_rel_err = 0.0;
    double max_abs_err = 0.0;
    bool pass = false;
};

// kappa_{m,n}(zeta) = int e^{i y zeta} sech^m(y) tanh^n(y) dy by quadrature on
// a wide box; the suite checks the closed reductions to kappa_{2,0}.
cplx kappa_mn(int m, int n, double zeta);
double kappa20_closed(double zeta); // pi zeta / sinh(pi zeta / 2), value 2 at 0

// kappa_w(zeta) = (zeta/sqrt(w)) cosech(pi zeta / (2 sqrt(w))), limit 2/pi.
double kappa_weighted(double omega, double zeta);

// Edge-resonance quadratics Q_r built from Phi1 = tanh^2/sqrt(2pi),
// Phi2 = -sech^2/sqrt(2pi) (arguments sqrt(w) y) and phi = phi_w:
//   Q1 = (-phi (Phi1^2 + 2 Phi1 Phi2),  phi (Phi2^2 + 2 Phi1 Phi2))
//   Q2 = ( 2 phi (Phi1^2 + Phi2^2 + Phi1 Phi2), -2 phi (Phi1^2 + Phi2^2 + Phi1 Phi2))
//   Q3 = (-phi (Phi2^2 + 2 Phi1 Phi2),  phi (Phi1^2 + 2 Phi1 Phi2))
VectorField build_Q(int which, double omega, const GridPtr& g);

// Closed transform of Q1 along the + branch: vanishes at xi^2 = omega with a
// sign flip, the null structure the suite certifies.
cplx q1_closed(double omega, double xi);

// Normal-form coefficients: q1 = (xi^2-w)^{-1} F+[Q1] continued through the
// resonance via the closed form; q2 = (xi^2+w)^{-1} F+[Q2] and
// q3 = (xi^2+3w)^{-1} F+[Q3] by quadrature.
struct FrakQ {
    std::vector<double> xi;
    std::vector<cplx> q1, q2, q3;
};
FrakQ frakq_coefficients(double omega, const FrequencyGrid& fg, const GridPtr& g);

// Quadratic spectral distributions, closed form and the defining quadrature.
// kind: 0 = ++, 1 = +-, 2 = --.
cplx nu_closed(int kind, double omega, double xi1, double xi2);
cplx nu_quadrature(int kind, double omega, double xi1, double xi2, const GridPtr& g);
cplx lambda_closed(int kind, double omega, double xi1, double xi2);
cplx lambda_quadrature(int kind, double omega, double xi1, double xi2, const GridPtr& g);

// Cubic interaction symbols. p1, p2 are real polynomials; p never vanishes and
// |p| >= 1 on the real lattice.
struct CubicSymbols {
    cplx p;
    double p1 = 0.0, p2 = 0.0;
};
CubicSymbols cubic_symbols(double xi, double xi1, double xi2, double xi3);

// Sub-suites; each returns one report row per certified identity.
std::vector<IdentityReport> kappa_identity_suite();
std::vector<IdentityReport> q1_suite(double omega);
std::vector<IdentityReport> nu_lambda_suite(double omega);
std::vector<IdentityReport> cubic_symbol_suite(std::uint64_t seed);
std::vector<IdentityReport> frakq_suite(double omega);
IdentityReport ft_tanh_convention();

// Everything above in a fixed order, as written by the verification command.
std::vector<IdentityReport> run_identity_suite(std::uint64_t seed);

} // namespace nlslab
