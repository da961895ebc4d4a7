#pragma once
#include <memory>
#include <vector>

#include "nlslab/fft.hpp"

namespace nlslab {

// Uniform periodic grid on [-L, L): x_j = -L + j dx, dx = 2L/n.
// Dual frequencies in FFT ordering with spacing pi/L.
struct Grid {
    int n = 0;
    double L = 0.0;
    double dx = 0.0;
    std::vector<double> x;
    std::vector<double> k;
};

using GridPtr = std::shared_ptr<const Grid>;

// n must be a power of two, at least 16; L positive.
GridPtr make_grid(int n, double L);

struct ComplexField {
    GridPtr grid;
    std::vector<cplx> v;
};

// Two-component field U = (a, b). J-invariance means b = conj(a) pointwise,
// the constraint every physical field in the pipeline satisfies.
struct VectorField {
    GridPtr grid;
    std::vector<cplx> a, b;
};

ComplexField make_field(const GridPtr& g);
VectorField make_vfield(const GridPtr& g);
VectorField make_J(const ComplexField& f);
double check_J_invariance(const VectorField& U); // sup |b - conj(a)|

void require_same_grid(const GridPtr& g1, const GridPtr& g2);

// <f,g> = integral f conj(g); periodic trapezoid dx * sum. Vector pairing adds
// the slot integrals: <U,V> = int (a1 conj(a2) + b1 conj(b2)).
cplx inner_product(const ComplexField& f, const ComplexField& g);
cplx inner_product(const VectorField& U, const VectorField& V);

double norm_l2(const ComplexField& f);
double norm_linf(const ComplexField& f);
double norm_h1(const ComplexField& f);
double norm_l2(const VectorField& U);
double norm_linf(const VectorField& U);

// Fourier-diagonal (ik)^order, order 1 or 2. Order 1 zeroes the unpaired
// Nyquist mode so real fields stay real.
ComplexField spectral_derivative(const ComplexField& f, int order);
VectorField spectral_derivative(const VectorField& U, int order);

// g(x) = f(x + s), exact on band-limited data via Fourier phases.
ComplexField fourier_shift(const ComplexField& f, double s);

// Pauli actions on the two slots:
// s1:(a,b)->(b,a), s2:(a,b)->(-ib,ia), s3:(a,b)->(a,-b).
VectorField sigma1(const VectorField& U);
VectorField sigma2(const VectorField& U);
VectorField sigma3(const VectorField& U);

VectorField add(const VectorField& U, const VectorField& V);
VectorField sub(const VectorField& U, const VectorField& V);
VectorField scale(const VectorField& U, cplx c);

} // namespace nlslab
