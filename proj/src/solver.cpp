#include "nlslab/solver.hpp"

#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {
namespace {

void half_nonlinear(std::vector<cplx>& v, double half_dt) {
    for (auto& z : v) {
        double ph = half_dt * std::norm(z);
        z *= cplx(std::cos(ph), std::sin(ph));
    }
}

void check_finite(const std::vector<cplx>& v, const std::string& where) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("solver: non-finite field " + where);
}

double boundary_mass(const ComplexField& psi) {
    const auto& g = *psi.grid;
    double s = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.x[j]) > 0.9 * g.L) s += std::norm(psi.v[j]);
    return s * g.dx;
}

MonitorRecord monitor_at(const ComplexField& psi, double t, double abs_threshold) {
    MonitorRecord r;
    r.t = t;
    r.q = conserved_quantities(psi);
    r.boundary_mass = boundary_mass(psi);
    r.boundary_flag = r.boundary_mass > abs_threshold;
    return r;
}

} // namespace

ComplexField step_strang(const ComplexField& psi, double dt) {
    ComplexField out{psi.grid, psi.v};
    half_nonlinear(out.v, 0.5 * dt);
    fft(out.v);
    const auto& k = psi.grid->k;
    for (std::size_t m = 0; m < out.v.size(); ++m) {
        double ph = -dt * k[m] * k[m];
        out.v[m] *= cplx(std::cos(ph), std::sin(ph));
    }
    ifft(out.v);
    half_nonlinear(out.v, 0.5 * dt);
    check_finite(out.v, "after a step of size " + std::to_string(dt));
    return out;
}

bool Trajectory::boundary_clean() const {
    for (const auto& r : monitor)
        if (r.boundary_flag) return false;
    return true;
}

double Trajectory::last_clean_time() const {
    double t = times.empty() ? 0.0 : times.front();
    for (const auto& r : monitor) {
        if (r.boundary_flag) break;
        t = r.t;
    }
    return t;
}

Trajectory evolve(const ComplexField& psi0, double T, double dt, double store_every,
                  double boundary_threshold_rel) {
    if (!(dt > 0.0) || !(T > 0.0)) throw ConfigError("evolve: dt and T must be positive");
    const long long nsteps = std::llround(T / dt);
    if (nsteps < 1) throw ConfigError("evolve: T shorter than one step");
    long long stride = store_every > 0.0 ? std::llround(store_every / dt) : nsteps;
    if (stride < 1) stride = 1;

    Trajectory traj;
    traj.grid = psi0.grid;
    traj.dt = dt;
    const double abs_threshold = boundary_threshold_rel * conserved_quantities(psi0).M;

    // precomputed linear half of the splitting (dt fixed for the whole run)
    const auto& k = psi0.grid->k;
    std::vector<cplx> lin(k.size());
    for (std::size_t m = 0; m < k.size(); ++m) {
        double ph = -dt * k[m] * k[m];
        lin[m] = cplx(std::cos(ph), std::sin(ph));
    }

    ComplexField psi{psi0.grid, psi0.v};
    traj.times.push_back(0.0);
    traj.snapshots.push_back(psi);
    traj.monitor.push_back(monitor_at(psi, 0.0, abs_threshold));

    for (long long s = 1; s <= nsteps; ++s) {
        half_nonlinear(psi.v, 0.5 * dt);
        fft(psi.v);
        for (std::size_t m = 0; m < psi.v.size(); ++m) psi.v[m] *= lin[m];
        ifft(psi.v);
        half_nonlinear(psi.v, 0.5 * dt);
        if (s % stride == 0 || s == nsteps) {
            double t = s * dt;
            check_finite(psi.v, "at t = " + std::to_string(t));
            if (traj.times.back() != t) {
                traj.times.push_back(t);
                traj.snapshots.push_back(psi);
                traj.monitor.push_back(monitor_at(psi, t, abs_threshold));
            }
        }
    }
    return traj;
}

} // namespace nlslab
