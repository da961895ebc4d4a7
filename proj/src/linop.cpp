#include "nlslab/linop.hpp"

#include <cmath>

#include "nlslab/errors.hpp"
#include "nlslab/soliton.hpp"

namespace nlslab {

VectorField apply_H(double omega, const VectorField& U) {
    VectorField lap = spectral_derivative(U, 2);
    VectorField out = make_vfield(U.grid);
    for (int j = 0; j < U.grid->n; ++j) {
        double ph2 = phi_at(omega, U.grid->x[j]);
        ph2 *= ph2;
        out.a[j] = -lap.a[j] + omega * U.a[j] - ph2 * (2.0 * U.a[j] + U.b[j]);
        out.b[j] = lap.b[j] - omega * U.b[j] + ph2 * (U.a[j] + 2.0 * U.b[j]);
    }
    return out;
}

VectorField eigenfunction_Y(double omega, int j, const GridPtr& g) {
    VectorField Y = make_vfield(g);
    const cplx i(0.0, 1.0);
    for (int m = 0; m < g->n; ++m) {
        double x = g->x[m];
        switch (j) {
            case 1: Y.a[m] = i * phi_at(omega, x);            Y.b[m] = -Y.a[m]; break;
            case 2: Y.a[m] = dphi_domega_at(omega, x);        Y.b[m] = Y.a[m];  break;
            case 3: Y.a[m] = dphi_dx_at(omega, x);            Y.b[m] = Y.a[m];  break;
            case 4: Y.a[m] = i * x * phi_at(omega, x);        Y.b[m] = -Y.a[m]; break;
            default: throw ConfigError("eigenfunction_Y: j must be 1..4");
        }
    }
    return Y;
}

VectorField eigenfunction_dY_domega(double omega, int j, const GridPtr& g) {
    VectorField Y = make_vfield(g);
    const cplx i(0.0, 1.0);
    for (int m = 0; m < g->n; ++m) {
        double x = g->x[m];
        switch (j) {
            case 1: Y.a[m] = i * dphi_domega_at(omega, x);     Y.b[m] = -Y.a[m]; break;
            case 2: Y.a[m] = d2phi_domega2_at(omega, x);       Y.b[m] = Y.a[m];  break;
            case 3: Y.a[m] = dphi_domega_dx_at(omega, x);      Y.b[m] = Y.a[m];  break;
            case 4: Y.a[m] = i * x * dphi_domega_at(omega, x); Y.b[m] = -Y.a[m]; break;
            default: throw ConfigError("eigenfunction_dY_domega: j must be 1..4");
        }
    }
    return Y;
}

VectorField resonance_Phi(double omega, int sign, const GridPtr& g) {
    if (sign != 1 && sign != -1) throw ConfigError("resonance_Phi: sign must be +1 or -1");
    VectorField F = make_vfield(g);
    const double r = std::sqrt(omega), c = 1.0 / std::sqrt(2.0 * M_PI);
    for (int m = 0; m < g->n; ++m) {
        double T = std::tanh(r * g->x[m]);
        double S2 = 1.0 - T * T;
        F.a[m] = c * T * T;
        F.b[m] = -c * S2;
    }
    return sign == 1 ? F : sigma1(F);
}

DiscreteCoefficients discrete_coefficients(const VectorField& U, double omega) {
    const GridPtr& g = U.grid;
    VectorField Y1 = eigenfunction_Y(omega, 1, g), Y2 = eigenfunction_Y(omega, 2, g);
    VectorField Y3 = eigenfunction_Y(omega, 3, g), Y4 = eigenfunction_Y(omega, 4, g);
    VectorField s2Y1 = sigma2(Y1), s2Y2 = sigma2(Y2), s2Y3 = sigma2(Y3), s2Y4 = sigma2(Y4);

    cplx n12 = inner_product(Y1, s2Y2), n21 = inner_product(Y2, s2Y1);
    cplx n34 = inner_product(Y3, s2Y4), n43 = inner_product(Y4, s2Y3);
    double floor_ = 1e-10 * std::max(1.0, norm_l2(Y2) * norm_l2(Y1));
    if (std::abs(n12) < floor_ || std::abs(n34) < floor_)
        throw NumericalError("project_discrete: degenerate duality pairing");

    DiscreteCoefficients c;
    c.d[0] = inner_product(U, s2Y2) / n12;
    c.d[1] = inner_product(U, s2Y1) / n21;
    c.d[2] = inner_product(U, s2Y4) / n34;
    c.d[3] = inner_product(U, s2Y3) / n43;
    return c;
}

VectorField project_discrete(const VectorField& U, double omega, DiscreteCoefficients* coeffs) {
    DiscreteCoefficients c = discrete_coefficients(U, omega);
    if (coeffs) *coeffs = c;
    VectorField out = scale(eigenfunction_Y(omega, 1, U.grid), c.d[0]);
    for (int j = 2; j <= 4; ++j)
        out = add(out, scale(eigenfunction_Y(omega, j, U.grid), c.d[j - 1]));
    return out;
}

VectorField project_essential(const VectorField& U, double omega) {
    return sub(U, project_discrete(U, omega));
}

VectorField propagate_linearized(const VectorField& U0, double omega, double t, double dt) {
    if (!(dt > 0.0)) throw ConfigError("propagate_linearized: dt must be positive");
    long long nsteps = std::llround(t / dt);
    if (nsteps < 1) nsteps = 1;
    const double h = t / static_cast<double>(nsteps);
    const GridPtr& g = U0.grid;

    // free flow multipliers e^{+-i h (k^2 + omega)}
    std::vector<cplx> la(g->n), lb(g->n);
    for (int m = 0; m < g->n; ++m) {
        double ph = h * (g->k[m] * g->k[m] + omega);
        la[m] = cplx(std::cos(ph), std::sin(ph));
        lb[m] = std::conj(la[m]);
    }
    // half-step potential rotation: dU/dt = i phi^2 A U with A = [[-2,-1],[1,2]],
    // A^2 = 3 I, so e^{i theta A} = cos(r3 theta) I + i sin(r3 theta)/r3 A pointwise.
    const double r3 = std::sqrt(3.0);
    std::vector<double> cth(g->n), sth(g->n);
    for (int m = 0; m < g->n; ++m) {
        double ph2 = phi_at(omega, g->x[m]);
        double theta = 0.5 * h * ph2 * ph2;
        cth[m] = std::cos(r3 * theta);
        sth[m] = std::sin(r3 * theta) / r3;
    }
    auto half_potential = [&](VectorField& U) {
        const cplx i(0.0, 1.0);
        for (int m = 0; m < g->n; ++m) {
            cplx a = U.a[m], b = U.b[m];
            U.a[m] = cth[m] * a + i * sth[m] * (-2.0 * a - b);
            U.b[m] = cth[m] * b + i * sth[m] * (a + 2.0 * b);
        }
    };

    VectorField U{g, U0.a, U0.b};
    for (long long s = 0; s < nsteps; ++s) {
        half_potential(U);
        fft(U.a);
        fft(U.b);
        for (int m = 0; m < g->n; ++m) {
            U.a[m] *= la[m];
            U.b[m] *= lb[m];
        }
        ifft(U.a);
        ifft(U.b);
        half_potential(U);
    }
    return U;
}

} // namespace nlslab
