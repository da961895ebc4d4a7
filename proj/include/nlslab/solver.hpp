#pragma once
#include "nlslab/soliton.hpp"

namespace nlslab {

// One Strang step for i dt(psi) + dxx(psi) + |psi|^2 psi = 0:
// half nonlinear phase e^{+i (dt/2) |psi|^2}, full linear multiplier
// e^{-i dt k^2}, half nonlinear phase. Throws NumericalError on NaN.
ComplexField step_strang(const ComplexField& psi, double dt);

struct MonitorRecord {
    double t = 0.0;
    Conserved q;
    double boundary_mass = 0.0; // int_{|x| > 0.9 L} |psi|^2
    bool boundary_flag = false;
};

struct Trajectory {
    GridPtr grid;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<ComplexField> snapshots;
    std::vector<MonitorRecord> monitor;

    bool boundary_clean() const;           // no frame flagged
    double last_clean_time() const;        // last frame time before any flag
};

// Fixed-step evolution to time T with a frame stored every store_every time
// units (snapped to whole steps; 0 stores first and last only). The boundary
// monitor flags frames whose tail mass exceeds threshold_rel * M(0); the run
// continues either way.
Trajectory evolve(const ComplexField& psi0, double T, double dt, double store_every,
                  double boundary_threshold_rel = 1e-6);

} // namespace nlslab
