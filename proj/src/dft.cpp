#include "nlslab/dft.hpp"

#include <cmath>

#include "nlslab/errors.hpp"
#include "nlslab/par.hpp"

namespace nlslab {
namespace {

constexpr double SQRT_2PI = 2.5066282746310002;

struct Tables {
    double r = 0.0;
    std::vector<double> T, S2; // tanh(r x_j), sech^2(r x_j)
};

Tables make_tables(double omega, const GridPtr& g) {
    Tables tb;
    tb.r = std::sqrt(omega);
    tb.T.resize(g->n);
    tb.S2.resize(g->n);
    for (int j = 0; j < g->n; ++j) {
        double T = std::tanh(tb.r * g->x[j]);
        tb.T[j] = T;
        tb.S2[j] = 1.0 - T * T;
    }
    return tb;
}

cplx denom_conj(double xi, double r) {
    // 1 / (|xi| + i r)^2, the conjugate of the m_j denominator
    cplx d(std::abs(xi), r);
    return 1.0 / (d * d);
}

cplx denom_plain(double xi, double r) {
    cplx d(std::abs(xi), -r);
    return 1.0 / (d * d);
}

} // namespace

FrequencyGrid make_fgrid(int n_xi, double xi_max) {
    if (n_xi < 3 || n_xi % 2 == 0)
        throw ConfigError("frozen.n_xi must be odd and at least 3, got " + std::to_string(n_xi));
    if (!(xi_max > 0.0)) throw ConfigError("frozen.xi_max must be positive");
    FrequencyGrid fg;
    fg.n_xi = n_xi;
    fg.xi_max = xi_max;
    fg.dxi = 2.0 * xi_max / (n_xi - 1);
    fg.xi.resize(n_xi);
    for (int m = 0; m < n_xi; ++m) fg.xi[m] = -xi_max + m * fg.dxi;
    fg.xi[(n_xi - 1) / 2] = 0.0; // exact node at the origin
    return fg;
}

PsiPair psi_basis(double omega, double x, double xi, int branch) {
    if (branch != 1 && branch != -1) throw ConfigError("psi_basis: branch must be +1 or -1");
    const double r = std::sqrt(omega);
    double T = std::tanh(r * x);
    cplx num(xi, r * T);
    cplx D = denom_plain(xi, r);
    cplx e(std::cos(x * xi), std::sin(x * xi));
    cplx m1 = num * num * D;
    cplx m2 = omega * (1.0 - T * T) * D;
    PsiPair p;
    p.c1 = m1 * e / SQRT_2PI;
    p.c2 = m2 * e / SQRT_2PI;
    if (branch == -1) std::swap(p.c1, p.c2);
    return p;
}

DistortedSpectrum dft_forward(const VectorField& F, double omega_bar, const FrequencyGrid& fg) {
    const GridPtr& g = F.grid;
    Tables tb = make_tables(omega_bar, g);
    const double r = tb.r, c = g->dx / SQRT_2PI;

    DistortedSpectrum S;
    S.omega_bar = omega_bar;
    S.fgrid = fg;
    S.f_plus.assign(fg.n_xi, 0.0);
    S.f_minus.assign(fg.n_xi, 0.0);

    double tail = 0.0;
    for (int j = 0; j < g->n; ++j)
        if (std::abs(g->x[j]) > 0.9 * g->L)
            tail = std::max({tail, std::abs(F.a[j]), std::abs(F.b[j])});
    S.boundary_warning = tail > 1e-8;

    parallel_for(fg.n_xi, [&](int m) {
        const double xi = fg.xi[m];
        const cplx D = denom_conj(xi, r);
        // phase recurrence for e^{-i x_j xi} over the uniform grid
        cplx w(std::cos(g->x[0] * xi), -std::sin(g->x[0] * xi));
        const cplx rho(std::cos(g->dx * xi), -std::sin(g->dx * xi));
        cplx A1 = 0.0, A2 = 0.0, A3 = 0.0, A4 = 0.0;
        for (int j = 0; j < g->n; ++j) {
            // q = conj(m1 numerator) = (xi - i r T)^2
            double T = tb.T[j], S2 = tb.S2[j];
            cplx q(xi * xi - r * r * T * T, -2.0 * xi * r * T);
            A1 += F.a[j] * q * w;
            A2 += F.b[j] * S2 * w;
            A3 += F.a[j] * S2 * w;
            A4 += F.b[j] * q * w;
            w *= rho;
        }
        S.f_plus[m] = c * D * (A1 - omega_bar * A2);
        S.f_minus[m] = c * D * (omega_bar * A3 - A4);
    });
    return S;
}

VectorField dft_inverse(const DistortedSpectrum& S, const GridPtr& g, bool* xi_decay_warning) {
    const FrequencyGrid& fg = S.fgrid;
    Tables tb = make_tables(S.omega_bar, g);
    const double r = tb.r, w0 = S.omega_bar;

    if (xi_decay_warning) {
        double peak = 0.0;
        for (int m = 0; m < fg.n_xi; ++m)
            peak = std::max({peak, std::abs(S.f_plus[m]), std::abs(S.f_minus[m])});
        double edge = std::max({std::abs(S.f_plus[0]), std::abs(S.f_plus[fg.n_xi - 1]),
                                std::abs(S.f_minus[0]), std::abs(S.f_minus[fg.n_xi - 1])});
        *xi_decay_warning = peak > 0.0 && edge > 1e-6 * peak;
    }

    // weighted spectra with the m_j denominator folded in
    std::vector<cplx> Gp(fg.n_xi), Gm(fg.n_xi);
    for (int m = 0; m < fg.n_xi; ++m) {
        cplx D = denom_plain(fg.xi[m], r);
        Gp[m] = fg.weight(m) * S.f_plus[m] * D;
        Gm[m] = fg.weight(m) * S.f_minus[m] * D;
    }

    VectorField out = make_vfield(g);
    parallel_for(g->n, [&](int j) {
        const double x = g->x[j], T = tb.T[j], S2 = tb.S2[j];
        cplx w(std::cos(x * fg.xi[0]), std::sin(x * fg.xi[0]));
        const cplx rho(std::cos(x * fg.dxi), std::sin(x * fg.dxi));
        cplx P0 = 0.0, P1 = 0.0, P2 = 0.0, M0 = 0.0, M1 = 0.0, M2 = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            double xi = fg.xi[m];
            cplx gp = Gp[m] * w, gm = Gm[m] * w;
            P0 += gp;
            P1 += xi * gp;
            P2 += xi * xi * gp;
            M0 += gm;
            M1 += xi * gm;
            M2 += xi * xi * gm;
            w *= rho;
        }
        // (xi + i r T)^2 = xi^2 - r^2 T^2 + 2 i r T xi, expanded over the moment sums
        const cplx i(0.0, 1.0);
        cplx m1_p = P2 - r * r * T * T * P0 + 2.0 * i * r * T * P1;
        cplx m1_m = M2 - r * r * T * T * M0 + 2.0 * i * r * T * M1;
        out.a[j] = (m1_p - w0 * S2 * M0) / SQRT_2PI;
        out.b[j] = (w0 * S2 * P0 - m1_m) / SQRT_2PI;
    });
    return out;
}

DistortedSpectrum propagate_spectrum(const DistortedSpectrum& S, double t) {
    DistortedSpectrum out = S;
    for (int m = 0; m < S.fgrid.n_xi; ++m) {
        double ph = t * (S.fgrid.xi[m] * S.fgrid.xi[m] + S.omega_bar);
        cplx e(std::cos(ph), std::sin(ph));
        out.f_plus[m] = S.f_plus[m] * e;
        out.f_minus[m] = S.f_minus[m] * std::conj(e);
    }
    return out;
}

std::vector<cplx> correction_L(const VectorField& F, double omega, const FrequencyGrid& fg,
                               int branch) {
    if (branch != 1 && branch != -1) throw ConfigError("correction_L: branch must be +1 or -1");
    const GridPtr& g = F.grid;
    Tables tb = make_tables(omega, g);
    const double c = g->dx / SQRT_2PI;
    const std::vector<cplx>& slot = branch == 1 ? F.b : F.a;

    std::vector<cplx> L(fg.n_xi);
    parallel_for(fg.n_xi, [&](int m) {
        const double xi = fg.xi[m];
        const cplx D = denom_conj(xi, tb.r);
        cplx w(std::cos(g->x[0] * xi), -std::sin(g->x[0] * xi));
        const cplx rho(std::cos(g->dx * xi), -std::sin(g->dx * xi));
        cplx acc = 0.0;
        for (int j = 0; j < g->n; ++j) {
            acc += slot[j] * tb.S2[j] * w;
            w *= rho;
        }
        L[m] = 2.0 * c * omega * D * acc;
    });
    return L;
}

std::vector<cplx> correction_K(const VectorField& F, double omega, const FrequencyGrid& fg,
                               int branch) {
    if (branch != 1 && branch != -1) throw ConfigError("correction_K: branch must be +1 or -1");
    const GridPtr& g = F.grid;
    Tables tb = make_tables(omega, g);
    const double r = tb.r, c = g->dx / SQRT_2PI;

    // conj(dx m1) = -2 i w S^2 (xi - i r T) / (|xi| + i r)^2
    // conj(dx m2) = -2 w^{3/2} S^2 T / (|xi| + i r)^2
    // K is the negated pairing of F against these; sign fixed so that
    // F~[dx F] = i xi F~[F] + K holds.
    std::vector<cplx> K(fg.n_xi);
    parallel_for(fg.n_xi, [&](int m) {
        const double xi = fg.xi[m];
        const cplx D = denom_conj(xi, r);
        const cplx i(0.0, 1.0);
        cplx w(std::cos(g->x[0] * xi), -std::sin(g->x[0] * xi));
        const cplx rho(std::cos(g->dx * xi), -std::sin(g->dx * xi));
        cplx acc = 0.0;
        for (int j = 0; j < g->n; ++j) {
            double T = tb.T[j], S2 = tb.S2[j];
            cplx dm1 = -2.0 * i * omega * S2 * cplx(xi, -r * T);
            cplx dm2 = -2.0 * omega * r * S2 * T;
            cplx term = branch == 1 ? F.a[j] * dm1 - F.b[j] * dm2
                                    : F.a[j] * dm2 - F.b[j] * dm1;
            acc += term * w;
            w *= rho;
        }
        K[m] = -c * D * acc;
    });
    return K;
}

} // namespace nlslab
