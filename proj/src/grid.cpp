#include "nlslab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {

GridPtr make_grid(int n, double L) {
    if (n < 16 || (n & (n - 1)) != 0)
        throw ConfigError("grid.n must be a power of two >= 16, got " + std::to_string(n));
    if (!(L > 0.0)) throw ConfigError("grid.L must be positive");
    auto g = std::make_shared<Grid>();
    g->n = n;
    g->L = L;
    g->dx = 2.0 * L / n;
    g->x.resize(n);
    g->k.resize(n);
    const double dk = M_PI / L;
    for (int j = 0; j < n; ++j) {
        g->x[j] = -L + j * g->dx;
        int m = j < n / 2 ? j : j - n;
        g->k[j] = dk * m;
    }
    return g;
}

ComplexField make_field(const GridPtr& g) { return ComplexField{g, std::vector<cplx>(g->n)}; }

VectorField make_vfield(const GridPtr& g) {
    return VectorField{g, std::vector<cplx>(g->n), std::vector<cplx>(g->n)};
}

VectorField make_J(const ComplexField& f) {
    VectorField U{f.grid, f.v, f.v};
    for (auto& z : U.b) z = std::conj(z);
    return U;
}

double check_J_invariance(const VectorField& U) {
    double worst = 0.0;
    for (std::size_t j = 0; j < U.a.size(); ++j)
        worst = std::max(worst, std::abs(U.b[j] - std::conj(U.a[j])));
    return worst;
}

void require_same_grid(const GridPtr& g1, const GridPtr& g2) {
    if (g1 == g2) return;
    if (!g1 || !g2 || g1->n != g2->n || g1->L != g2->L)
        throw ConfigError("fields live on different grids");
}

cplx inner_product(const ComplexField& f, const ComplexField& g) {
    require_same_grid(f.grid, g.grid);
    cplx s = 0.0;
    for (std::size_t j = 0; j < f.v.size(); ++j) s += f.v[j] * std::conj(g.v[j]);
    return s * f.grid->dx;
}

cplx inner_product(const VectorField& U, const VectorField& V) {
    require_same_grid(U.grid, V.grid);
    cplx s = 0.0;
    for (std::size_t j = 0; j < U.a.size(); ++j)
        s += U.a[j] * std::conj(V.a[j]) + U.b[j] * std::conj(V.b[j]);
    return s * U.grid->dx;
}

double norm_l2(const ComplexField& f) {
    double s = 0.0;
    for (const auto& z : f.v) s += std::norm(z);
    return std::sqrt(s * f.grid->dx);
}

double norm_linf(const ComplexField& f) {
    double s = 0.0;
    for (const auto& z : f.v) s = std::max(s, std::abs(z));
    return s;
}

double norm_h1(const ComplexField& f) {
    ComplexField fx = spectral_derivative(f, 1);
    double a = norm_l2(f), b = norm_l2(fx);
    return std::sqrt(a * a + b * b);
}

double norm_l2(const VectorField& U) {
    double s = 0.0;
    for (const auto& z : U.a) s += std::norm(z);
    for (const auto& z : U.b) s += std::norm(z);
    return std::sqrt(s * U.grid->dx);
}

double norm_linf(const VectorField& U) {
    double s = 0.0;
    for (const auto& z : U.a) s = std::max(s, std::abs(z));
    for (const auto& z : U.b) s = std::max(s, std::abs(z));
    return s;
}

ComplexField spectral_derivative(const ComplexField& f, int order) {
    if (order != 1 && order != 2)
        throw ConfigError("spectral_derivative: order must be 1 or 2");
    ComplexField out{f.grid, f.v};
    fft(out.v);
    const int n = f.grid->n;
    if (order == 1) {
        for (int m = 0; m < n; ++m) out.v[m] *= cplx(0.0, f.grid->k[m]);
        out.v[n / 2] = 0.0; // unpaired Nyquist mode
    } else {
        for (int m = 0; m < n; ++m) out.v[m] *= -f.grid->k[m] * f.grid->k[m];
    }
    ifft(out.v);
    return out;
}

VectorField spectral_derivative(const VectorField& U, int order) {
    ComplexField fa{U.grid, U.a}, fb{U.grid, U.b};
    VectorField out{U.grid, spectral_derivative(fa, order).v, spectral_derivative(fb, order).v};
    return out;
}

ComplexField fourier_shift(const ComplexField& f, double s) {
    ComplexField out{f.grid, f.v};
    fft(out.v);
    const int n = f.grid->n;
    for (int m = 0; m < n; ++m) {
        double ph = f.grid->k[m] * s;
        out.v[m] *= cplx(std::cos(ph), std::sin(ph));
    }
    ifft(out.v);
    return out;
}

VectorField sigma1(const VectorField& U) { return VectorField{U.grid, U.b, U.a}; }

VectorField sigma2(const VectorField& U) {
    VectorField out = make_vfield(U.grid);
    const cplx i(0.0, 1.0);
    for (std::size_t j = 0; j < U.a.size(); ++j) {
        out.a[j] = -i * U.b[j];
        out.b[j] = i * U.a[j];
    }
    return out;
}

VectorField sigma3(const VectorField& U) {
    VectorField out{U.grid, U.a, U.b};
    for (auto& z : out.b) z = -z;
    return out;
}

VectorField add(const VectorField& U, const VectorField& V) {
    require_same_grid(U.grid, V.grid);
    VectorField out{U.grid, U.a, U.b};
    for (std::size_t j = 0; j < out.a.size(); ++j) {
        out.a[j] += V.a[j];
        out.b[j] += V.b[j];
    }
    return out;
}

VectorField sub(const VectorField& U, const VectorField& V) {
    require_same_grid(U.grid, V.grid);
    VectorField out{U.grid, U.a, U.b};
    for (std::size_t j = 0; j < out.a.size(); ++j) {
        out.a[j] -= V.a[j];
        out.b[j] -= V.b[j];
    }
    return out;
}

VectorField scale(const VectorField& U, cplx c) {
    VectorField out{U.grid, U.a, U.b};
    for (auto& z : out.a) z *= c;
    for (auto& z : out.b) z *= c;
    return out;
}

} // namespace nlslab
