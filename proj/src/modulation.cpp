#include "nlslab/modulation.hpp"

#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {
namespace {

// radiation in the co-moving frame for trial parameters
VectorField radiation(const ComplexField& psi, const SolitonParams& q) {
    ComplexField shifted = fourier_shift(psi, q.sigma);
    ComplexField u = make_field(psi.grid);
    for (int j = 0; j < psi.grid->n; ++j) {
        double ph = -(q.gamma + q.p * psi.grid->x[j]);
        u.v[j] = shifted.v[j] * cplx(std::cos(ph), std::sin(ph)) - phi_at(q.omega, psi.grid->x[j]);
    }
    return make_J(u);
}

Eigen::Vector4d pairing_residuals(const VectorField& U, double omega) {
    Eigen::Vector4d K;
    for (int j = 1; j <= 4; ++j) {
        VectorField s2Y = sigma2(eigenfunction_Y(omega, j, U.grid));
        K(j - 1) = std::real(inner_product(U, s2Y));
    }
    return K;
}

// closed leading Jacobian of the pairings in the unknowns (omega, gamma, p, sigma)
Eigen::Matrix4d leading_jacobian(double omega, double p) {
    const double c = 2.0 / std::sqrt(omega);   // -<Y1, s2 Y2> = c_omega
    const double n2 = 4.0 * std::sqrt(omega);  // <Y3, s2 Y4> = ||phi||^2
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J(0, 0) = c;
    J(1, 1) = c;
    J(1, 3) = -p * c;
    J(2, 2) = -n2;
    J(3, 3) = n2;
    return J;
}

} // namespace

ModulationState fit_parameters(const ComplexField& psi, const SolitonParams& seed,
                               const FitOptions& opt) {
    SolitonParams q = seed;
    ModulationState st;
    st.params = q;

    VectorField U = radiation(psi, q);
    Eigen::Vector4d K = pairing_residuals(U, q.omega);
    double res = K.cwiseAbs().maxCoeff();

    Eigen::Matrix4d correction = Eigen::Matrix4d::Zero();
    bool have_correction = false;

    int it = 0;
    for (; it < opt.max_iter && res > opt.tol; ++it) {
        if (!have_correction) {
            // finite-difference correction to the leading Jacobian, frozen here
            const double h = 1e-6;
            Eigen::Matrix4d Jnum;
            for (int c = 0; c < 4; ++c) {
                SolitonParams qp = q, qm = q;
                double* fp[4] = {&qp.omega, &qp.gamma, &qp.p, &qp.sigma};
                double* fm[4] = {&qm.omega, &qm.gamma, &qm.p, &qm.sigma};
                *fp[c] += h;
                *fm[c] -= h;
                Eigen::Vector4d Kp = pairing_residuals(radiation(psi, qp), qp.omega);
                Eigen::Vector4d Km = pairing_residuals(radiation(psi, qm), qm.omega);
                Jnum.col(c) = (Kp - Km) / (2.0 * h);
            }
            correction = Jnum - leading_jacobian(q.omega, q.p);
            have_correction = true;
        }
        Eigen::Matrix4d J = leading_jacobian(q.omega, q.p) + correction;
        Eigen::Vector4d delta = J.colPivHouseholderQr().solve(-K);
        if (!delta.allFinite()) break;

        double step = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opt.max_halvings; ++halving) {
            SolitonParams trial = q;
            trial.omega += step * delta(0);
            trial.gamma += step * delta(1);
            trial.p += step * delta(2);
            trial.sigma += step * delta(3);
            if (trial.omega <= 0.0) {
                step *= 0.5;
                continue;
            }
            VectorField Ut = radiation(psi, trial);
            Eigen::Vector4d Kt = pairing_residuals(Ut, trial.omega);
            double rt = Kt.cwiseAbs().maxCoeff();
            if (rt < res || rt <= opt.tol) {
                q = trial;
                U = std::move(Ut);
                K = Kt;
                res = rt;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }

    st.params = q;
    st.U = std::move(U);
    st.newton_residual = res;
    for (int j = 0; j < 4; ++j) st.orth[j] = std::abs(K(j));
    st.iterations = it;
    st.converged = res <= opt.tol;
    return st;
}

std::vector<double> ModulationSeries::times() const {
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) v[i] = states[i].t;
    return v;
}
std::vector<double> ModulationSeries::omega() const {
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) v[i] = states[i].params.omega;
    return v;
}
std::vector<double> ModulationSeries::gamma() const {
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) v[i] = states[i].params.gamma;
    return v;
}
std::vector<double> ModulationSeries::p() const {
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) v[i] = states[i].params.p;
    return v;
}
std::vector<double> ModulationSeries::sigma() const {
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) v[i] = states[i].params.sigma;
    return v;
}

ModulationSeries track(const Trajectory& traj, const SolitonParams& seed0,
                       const FitOptions& opt) {
    ModulationSeries series;
    SolitonParams seed = seed0;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        ModulationState st = fit_parameters(traj.snapshots[i], seed, opt);
        st.t = traj.times[i];
        if (!st.converged) {
            series.complete = false;
            series.states.push_back(std::move(st)); // failure record, then stop
            break;
        }
        seed = st.params;
        series.states.push_back(std::move(st));
    }
    return series;
}

Eigen::Matrix4d assemble_M(const VectorField& U, double omega) {
    const double c = 2.0 / std::sqrt(omega), n2 = 4.0 * std::sqrt(omega);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    M(0, 1) = c;
    M(1, 0) = c;
    M(2, 3) = -n2;
    M(3, 2) = n2;

    const GridPtr& g = U.grid;
    for (int j = 1; j <= 4; ++j) {
        VectorField Y = eigenfunction_Y(omega, j, g);
        VectorField dY = eigenfunction_dY_domega(omega, j, g);
        VectorField Yy = spectral_derivative(Y, 1);
        VectorField yY = Y;
        for (int m = 0; m < g->n; ++m) {
            yY.a[m] *= g->x[m];
            yY.b[m] *= g->x[m];
        }
        // imaginary parts vanish for J-invariant U
        M(j - 1, 0) += std::real(inner_product(U, sigma1(Y)));
        M(j - 1, 1) += std::real(inner_product(U, sigma2(dY)));
        M(j - 1, 2) -= std::real(inner_product(U, sigma2(Yy)));
        M(j - 1, 3) += std::real(inner_product(U, sigma1(yY)));
    }
    return M;
}

VectorField nonlinearity_N(const VectorField& U, double omega) {
    VectorField N = make_vfield(U.grid);
    for (int j = 0; j < U.grid->n; ++j) {
        double phi = phi_at(omega, U.grid->x[j]);
        cplx a = U.a[j], b = U.b[j];
        N.a[j] = -phi * (a * a + 2.0 * a * b) - a * a * b;
        N.b[j] = phi * (b * b + 2.0 * a * b) + b * b * a;
    }
    return N;
}

Eigen::Vector4d modulation_rhs(const VectorField& U, double omega) {
    VectorField iN = scale(nonlinearity_N(U, omega), cplx(0.0, 1.0));
    Eigen::Vector4d r;
    for (int j = 1; j <= 4; ++j) {
        VectorField s2Y = sigma2(eigenfunction_Y(omega, j, U.grid));
        r(j - 1) = std::real(inner_product(iN, s2Y));
    }
    return r;
}

namespace {

// centered interior derivative, one-sided second order at the ends
std::vector<double> dot_series(const std::vector<double>& t, const std::vector<double>& f) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    const double h = t[1] - t[0];
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

void require_uniform(const std::vector<double>& t) {
    if (t.size() < 3) throw ConfigError("series too short for finite differences");
    double h = t[1] - t[0];
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigError("finite differences need a uniform frame cadence");
}

} // namespace

OdeResidualSeries verify_modulation_odes(const ModulationSeries& s) {
    std::vector<double> t = s.times();
    require_uniform(t);
    std::vector<double> w = s.omega(), gm = s.gamma(), pp = s.p(), sg = s.sigma();
    std::vector<double> wd = dot_series(t, w), gd = dot_series(t, gm);
    std::vector<double> pd = dot_series(t, pp), sd = dot_series(t, sg);

    OdeResidualSeries out;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const ModulationState& st = s.states[i];
        Eigen::Vector4d gvec;
        gvec << gd[i] + pp[i] * pp[i] - w[i] - pp[i] * sd[i], wd[i], sd[i] - 2.0 * pp[i], pd[i];
        Eigen::Vector4d lhs = assemble_M(st.U, w[i]) * gvec;
        Eigen::Vector4d rhs = modulation_rhs(st.U, w[i]);
        out.t.push_back(t[i]);
        out.residual.push_back((lhs - rhs).cwiseAbs().maxCoeff());
    }
    return out;
}

RenormalizedSeries renormalize(const ModulationSeries& s, double omega_bar, double p_bar) {
    RenormalizedSeries R;
    R.omega_bar = omega_bar;
    R.p_bar = p_bar;
    R.t = s.times();
    require_uniform(R.t);
    std::vector<double> w = s.omega(), gm = s.gamma(), pp = s.p(), sg = s.sigma();
    std::vector<double> gd = dot_series(R.t, gm), sd = dot_series(R.t, sg);

    const std::size_t n = R.t.size();
    R.V.reserve(n);
    R.theta1_dot.resize(n);
    R.theta2_dot.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const VectorField& U = s.states[i].U;
        VectorField V = make_vfield(U.grid);
        double dp = pp[i] - p_bar;
        for (int j = 0; j < U.grid->n; ++j) {
            double ph = dp * U.grid->x[j];
            cplx e(std::cos(ph), std::sin(ph));
            V.a[j] = U.a[j] * e;
            V.b[j] = std::conj(V.a[j]); // exact J-invariance by construction
        }
        R.V.push_back(std::move(V));
        R.theta1_dot[i] = w[i] - omega_bar + (sd[i] - 2.0 * p_bar) * dp - dp * dp +
                          (gd[i] + pp[i] * pp[i] - w[i] - pp[i] * sd[i]);
        R.theta2_dot[i] = sd[i] - 2.0 * p_bar;
    }
    R.theta1.assign(n, 0.0);
    R.theta2.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double h = R.t[i] - R.t[i - 1];
        R.theta1[i] = R.theta1[i - 1] + 0.5 * h * (R.theta1_dot[i - 1] + R.theta1_dot[i]);
        R.theta2[i] = R.theta2[i - 1] + 0.5 * h * (R.theta2_dot[i - 1] + R.theta2_dot[i]);
    }
    return R;
}

} // namespace nlslab
