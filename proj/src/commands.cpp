#include "nlslab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include "nlslab/asymptotics.hpp"
#include "nlslab/csv.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/par.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {
namespace {

ExperimentConfig load_config(const CommandOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = parse_config(opt.config_path);
    validate(cfg);
    return cfg;
}

void note(const CommandOptions& opt, const std::string& msg) {
    if (!opt.quiet) std::cout << msg << "\n";
}

std::string series_path(const CommandOptions& opt, const std::string& name) {
    return opt.out_dir + "/series/" + name;
}

std::string report_path(const CommandOptions& opt, const std::string& name) {
    return opt.out_dir + "/reports/" + name;
}

void write_monitor(const Trajectory& traj, const std::string& path) {
    CsvWriter csv(path, {"t", "mass", "momentum", "energy", "boundary_mass", "boundary_flag"});
    for (const auto& r : traj.monitor)
        csv.row({fmt17(r.t), fmt17(r.q.M), fmt17(r.q.P), fmt17(r.q.E), fmt17(r.boundary_mass),
                 r.boundary_flag ? "1" : "0"});
}

void write_modulation(const ModulationSeries& series, const RenormalizedSeries& R,
                      const std::string& path) {
    CsvWriter csv(path, {"t", "omega", "gamma", "p", "sigma", "theta1", "theta2",
                         "newton_residual", "orth1", "orth2", "orth3", "orth4"});
    for (std::size_t i = 0; i < series.states.size(); ++i) {
        const ModulationState& st = series.states[i];
        double th1 = i < R.theta1.size() ? R.theta1[i] : 0.0;
        double th2 = i < R.theta2.size() ? R.theta2[i] : 0.0;
        csv.row({fmt17(st.t), fmt17(st.params.omega), fmt17(st.params.gamma), fmt17(st.params.p),
                 fmt17(st.params.sigma), fmt17(th1), fmt17(th2), fmt17(st.newton_residual),
                 fmt17(st.orth[0]), fmt17(st.orth[1]), fmt17(st.orth[2]), fmt17(st.orth[3])});
    }
}

void write_spectrum(const FrequencyGrid& fg, const std::vector<cplx>& fp,
                    const std::vector<cplx>& fm, const std::string& path) {
    CsvWriter csv(path, {"xi", "re_fplus", "im_fplus", "re_fminus", "im_fminus"});
    for (int m = 0; m < fg.n_xi; ++m)
        csv.row({fmt17(fg.xi[m]), fmt17(fp[m].real()), fmt17(fp[m].imag()), fmt17(fm[m].real()),
                 fmt17(fm[m].imag())});
}

void write_decay_series(const std::vector<double>& t, const std::vector<double>& v,
                        const std::string& path) {
    CsvWriter csv(path, {"t", "value"});
    for (std::size_t i = 0; i < t.size(); ++i) csv.row({fmt17(t[i]), fmt17(v[i])});
}

void write_identity_reports(const std::vector<IdentityReport>& reports, const std::string& path) {
    CsvWriter csv(path, {"name", "lattice_size", "max_rel_err", "max_abs_err", "pass"});
    for (const auto& r : reports)
        csv.row({r.name, std::to_string(r.lattice_size), fmt17(r.max_rel_err),
                 fmt17(r.max_abs_err), r.pass ? "1" : "0"});
}

ComplexField gaussian_bump(const ExperimentConfig& cfg, const GridPtr& g) {
    ComplexField u = make_field(g);
    if (cfg.perturbation.kind == "none") return u;
    const double A = cfg.perturbation.amplitude, w = cfg.perturbation.width;
    const double c = cfg.perturbation.center, ph = cfg.perturbation.phase;
    const cplx e(A * std::cos(ph), A * std::sin(ph));
    for (int j = 0; j < g->n; ++j) {
        double y = g->x[j] - c;
        u.v[j] = e * std::exp(-y * y / (2.0 * w * w));
    }
    return u;
}

} // namespace

ComplexField initial_data(const ExperimentConfig& cfg, const GridPtr& g) {
    ComplexField u0 = gaussian_bump(cfg, g);
    ComplexField psi = make_field(g);
    const auto& s = cfg.soliton;
    for (int j = 0; j < g->n; ++j) {
        double y = g->x[j] - s.sigma0;
        double ph = s.p0 * y + s.gamma0;
        psi.v[j] = cplx(std::cos(ph), std::sin(ph)) * (phi_at(s.omega0, y) + u0.v[j]);
    }
    // perturbation rides in the co-moving frame: sample it at y as well
    if (cfg.perturbation.kind != "none" && s.sigma0 != 0.0) {
        ComplexField u = gaussian_bump(cfg, g);
        for (int j = 0; j < g->n; ++j) {
            double y = g->x[j] - s.sigma0;
            double yy = y - cfg.perturbation.center;
            double ph = s.p0 * y + s.gamma0;
            cplx e(cfg.perturbation.amplitude * std::cos(cfg.perturbation.phase + ph),
                   cfg.perturbation.amplitude * std::sin(cfg.perturbation.phase + ph));
            psi.v[j] = cplx(std::cos(ph), std::sin(ph)) * phi_at(s.omega0, y) +
                       e * std::exp(-yy * yy / (2.0 * cfg.perturbation.width *
                                                cfg.perturbation.width));
        }
    }
    return psi;
}

int cmd_simulate(const CommandOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    GridPtr g = make_grid(cfg.grid.n, cfg.grid.L);
    ComplexField psi0 = initial_data(cfg, g);
    Trajectory traj = evolve(psi0, cfg.time.T, cfg.time.dt, cfg.time.store_every,
                             cfg.tolerances.boundary_monitor);
    write_monitor(traj, series_path(opt, "monitor.csv"));
    {
        const ComplexField& last = traj.snapshots.back();
        CsvWriter csv(series_path(opt, "field_final.csv"), {"x", "re_psi", "im_psi"});
        for (int j = 0; j < g->n; ++j)
            csv.row({fmt17(g->x[j]), fmt17(last.v[j].real()), fmt17(last.v[j].imag())});
    }
    double mass_drift = 0.0, energy_drift = 0.0;
    for (const auto& r : traj.monitor) {
        mass_drift = std::max(mass_drift, std::abs(r.q.M - traj.monitor.front().q.M));
        energy_drift = std::max(energy_drift, std::abs(r.q.E - traj.monitor.front().q.E));
    }
    bool clean = traj.boundary_clean();
    note(opt, "simulate: frames=" + std::to_string(traj.times.size()) +
                  " mass_drift=" + fmt17(mass_drift) + " energy_drift=" + fmt17(energy_drift) +
                  std::string(clean ? " boundary=clean" : " boundary=FLAGGED"));
    return clean ? 0 : 1;
}

int cmd_fit_modulation(const CommandOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    GridPtr g = make_grid(cfg.grid.n, cfg.grid.L);
    ComplexField psi0 = initial_data(cfg, g);
    Trajectory traj = evolve(psi0, cfg.time.T, cfg.time.dt, cfg.time.store_every,
                             cfg.tolerances.boundary_monitor);
    FitOptions fopt;
    fopt.tol = cfg.tolerances.newton;
    SolitonParams seed{cfg.soliton.omega0, cfg.soliton.gamma0, cfg.soliton.p0, cfg.soliton.sigma0};
    ModulationSeries series = track(traj, seed, fopt);
    if (!series.complete) {
        // write what was tracked before the failing frame, then fail
        const auto& last = series.states.back();
        note(opt, "fit-modulation: Newton failed at t=" + fmt17(last.t) +
                      " residual=" + fmt17(last.newton_residual));
        RenormalizedSeries empty;
        write_modulation(series, empty, series_path(opt, "modulation.csv"));
        return 3;
    }
    double omega_bar = series.states.back().params.omega;
    double p_bar = series.states.back().params.p;
    RenormalizedSeries R = renormalize(series, omega_bar, p_bar);
    write_modulation(series, R, series_path(opt, "modulation.csv"));
    note(opt, "fit-modulation: frames=" + std::to_string(series.states.size()) +
                  " omega_T=" + fmt17(omega_bar) + " p_T=" + fmt17(p_bar));
    return 0;
}

int cmd_verify_identities(const CommandOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    std::vector<IdentityReport> reports = run_identity_suite(cfg.seed);
    write_identity_reports(reports, report_path(opt, "identities.csv"));
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.pass;
        note(opt, std::string(r.pass ? "pass " : "FAIL ") + r.name +
                      " rel=" + fmt17(r.max_rel_err) + " abs=" + fmt17(r.max_abs_err));
    }
    return all ? 0 : 1;
}

int cmd_verify_dft(const CommandOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    GridPtr g = make_grid(cfg.grid.n, cfg.grid.L);
    const double w = cfg.soliton.omega0;
    FrequencyGrid fg = make_fgrid(cfg.frozen.n_xi, cfg.frozen.xi_max);
    std::vector<IdentityReport> reports;

    // smooth localized J-invariant test field
    ComplexField f = make_field(g);
    for (int j = 0; j < g->n; ++j) {
        double y = g->x[j] - 0.7;
        f.v[j] = cplx(std::cos(0.3 + 0.4 * y), std::sin(0.3 + 0.4 * y)) *
                 std::exp(-y * y / (2.0 * 1.2 * 1.2));
    }
    VectorField F = make_J(f);

    { // roundtrip on the essential part
        VectorField Pe = project_essential(F, w);
        DistortedSpectrum S = dft_forward(Pe, w, fg);
        VectorField back = dft_inverse(S, g);
        double err = norm_l2(sub(back, Pe)) / norm_l2(Pe);
        reports.push_back(IdentityReport{"dft_roundtrip_essential", fg.n_xi, err, err, err < 1e-4});
    }
    { // generalized kernel annihilation
        double worst = 0.0;
        for (int j = 1; j <= 4; ++j) {
            DistortedSpectrum S = dft_forward(eigenfunction_Y(w, j, g), w, fg);
            for (int m = 0; m < fg.n_xi; ++m)
                worst = std::max({worst, std::abs(S.f_plus[m]), std::abs(S.f_minus[m])});
        }
        reports.push_back(IdentityReport{"dft_annihilates_kernel", 4 * fg.n_xi, worst, worst,
                                         worst < 1e-6});
    }
    { // conjugation relation for J-invariant data
        DistortedSpectrum S = dft_forward(F, w, fg);
        const double r = std::sqrt(w);
        double worst = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            cplx num(std::abs(fg.xi[m]), -r), den(std::abs(fg.xi[m]), r);
            cplx beta = (num * num) / (den * den);
            cplx rhs = -beta * std::conj(S.f_plus[fg.n_xi - 1 - m]);
            worst = std::max(worst, std::abs(S.f_minus[m] - rhs));
        }
        reports.push_back(
            IdentityReport{"dft_conjugation_relation", fg.n_xi, worst, worst, worst < 1e-8});
    }
    { // diagonalization of the linearized flow
        VectorField Pe = project_essential(F, w);
        DistortedSpectrum S0 = dft_forward(Pe, w, fg);
        double sup0 = 0.0;
        for (const auto& z : S0.f_plus) sup0 = std::max(sup0, std::abs(z));
        for (double t : {0.5, 1.0}) {
            VectorField Ut = propagate_linearized(Pe, w, t, 1e-3);
            DistortedSpectrum St = dft_forward(Ut, w, fg);
            DistortedSpectrum Sp = propagate_spectrum(S0, t);
            double worst = 0.0;
            for (int m = 0; m < fg.n_xi; ++m)
                worst = std::max({worst, std::abs(St.f_plus[m] - Sp.f_plus[m]),
                                  std::abs(St.f_minus[m] - Sp.f_minus[m])});
            double rel = worst / sup0;
            reports.push_back(IdentityReport{"dft_diagonalization_t" + fmt17(t), fg.n_xi, rel,
                                             worst, rel < 1e-5});
        }
    }
    { // uniform boundedness of the basis multipliers
        double sup = 0.0;
        for (int m = 0; m < fg.n_xi; ++m)
            for (int j = 0; j < g->n; j += 16) {
                PsiPair p = psi_basis(w, g->x[j], fg.xi[m], 1);
                constexpr double SQ2PI = 2.5066282746310002;
                sup = std::max({sup, std::abs(p.c1) * SQ2PI, std::abs(p.c2) * SQ2PI});
            }
        reports.push_back(IdentityReport{"dft_multiplier_bound", fg.n_xi * (g->n / 16), sup, sup,
                                         sup < 4.0});
    }
    { // pairing corrections: sigma3 insertion and the derivative commutator
        DistortedSpectrum S = dft_forward(F, w, fg);
        DistortedSpectrum S3 = dft_forward(sigma3(F), w, fg);
        std::vector<cplx> Lp = correction_L(F, w, fg, 1), Lm = correction_L(F, w, fg, -1);
        double worst3 = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            worst3 = std::max(worst3, std::abs(S3.f_plus[m] - (S.f_plus[m] + Lp[m])));
            worst3 = std::max(worst3, std::abs(S3.f_minus[m] - (-S.f_minus[m] + Lm[m])));
        }
        reports.push_back(
            IdentityReport{"dft_sigma3_correction", 2 * fg.n_xi, worst3, worst3, worst3 < 1e-8});

        VectorField Fx = spectral_derivative(F, 1);
        DistortedSpectrum Sx = dft_forward(Fx, w, fg);
        std::vector<cplx> Kp = correction_K(F, w, fg, 1), Km = correction_K(F, w, fg, -1);
        double worstk = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            cplx ix(0.0, fg.xi[m]);
            worstk = std::max(worstk, std::abs(Sx.f_plus[m] - (ix * S.f_plus[m] + Kp[m])));
            worstk = std::max(worstk, std::abs(Sx.f_minus[m] - (ix * S.f_minus[m] + Km[m])));
        }
        reports.push_back(
            IdentityReport{"dft_derivative_correction", 2 * fg.n_xi, worstk, worstk,
                           worstk < 1e-8});
    }

    write_identity_reports(reports, report_path(opt, "dft_checks.csv"));
    bool all = true;
    for (const auto& r : reports) {
        all = all && r.pass;
        note(opt, std::string(r.pass ? "pass " : "FAIL ") + r.name + " err=" +
                      fmt17(std::max(r.max_rel_err, r.max_abs_err)));
    }
    return all ? 0 : 1;
}

int cmd_decay_report(const CommandOptions& opt) {
    ExperimentConfig cfg = load_config(opt);
    GridPtr g = make_grid(cfg.grid.n, cfg.grid.L);
    ComplexField psi0 = initial_data(cfg, g);
    const double eps = cfg.perturbation.kind == "none" ? 0.0 : cfg.perturbation.amplitude;

    note(opt, "decay-report: evolving to T=" + fmt17(cfg.time.T));
    Trajectory traj = evolve(psi0, cfg.time.T, cfg.time.dt, cfg.time.store_every,
                             cfg.tolerances.boundary_monitor);
    write_monitor(traj, series_path(opt, "monitor.csv"));
    const double t_clean = traj.last_clean_time();

    note(opt, "decay-report: tracking modulation");
    FitOptions fopt;
    fopt.tol = cfg.tolerances.newton;
    SolitonParams seed{cfg.soliton.omega0, cfg.soliton.gamma0, cfg.soliton.p0, cfg.soliton.sigma0};
    ModulationSeries series = track(traj, seed, fopt);
    if (!series.complete) {
        note(opt, "decay-report: modulation fit failed at t=" + fmt17(series.states.back().t));
        return 3;
    }
    const double omega_bar = series.states.back().params.omega;
    const double p_bar = series.states.back().params.p;
    RenormalizedSeries R = renormalize(series, omega_bar, p_bar);
    write_modulation(series, R, series_path(opt, "modulation.csv"));

    note(opt, "decay-report: profile spectra");
    FrequencyGrid fg = make_fgrid(cfg.frozen.n_xi, cfg.frozen.xi_max);
    SpectrumSeries S = profile_spectra(R, fg);

    note(opt, "decay-report: low-frequency amplitudes");
    FrequencyGrid hgrid = make_fgrid(4097, 2.5);
    AmplitudeSeries A = amplitudes_h(R, hgrid);

    FrakQ fq = frakq_coefficients(omega_bar, fg, g);

    const std::vector<double>& t = R.t;
    const std::size_t nf = t.size();
    std::vector<double> u_linf(nf), omega_gap(nf), p_gap(nf), h1a(nf), h2a(nf), rw(nf), bsup(nf);
    std::vector<std::vector<double>> dmag(4, std::vector<double>(nf));
    for (std::size_t i = 0; i < nf; ++i) {
        const ModulationState& st = series.states[i];
        u_linf[i] = norm_linf(ComplexField{g, st.U.a});
        omega_gap[i] = std::abs(st.params.omega - omega_bar);
        p_gap[i] = std::abs(st.params.p - p_bar);
        h1a[i] = std::abs(A.h1[i]);
        h2a[i] = std::abs(A.h2[i]);
        ComplexField Rv = remainder_R(S.v_e[i], A.h1[i], A.h2[i], omega_bar);
        rw[i] = weighted_sup(Rv);
        bsup[i] = normal_form_sup(t[i], A.h1[i], A.h2[i], omega_bar, fq);
        DiscreteCoefficients dc = discrete_coefficients(R.V[i], omega_bar);
        for (int j = 0; j < 4; ++j) dmag[j][i] = std::abs(dc.d[j]);
    }

    // scattering profiles at t = 40 and the last three clean frames
    note(opt, "decay-report: scattering profiles");
    std::vector<double> wtimes = {40.0};
    {
        std::vector<double> clean;
        for (double ti : t)
            if (ti >= 1.0 && ti <= t_clean) clean.push_back(ti);
        std::size_t nc = clean.size();
        for (std::size_t k = nc >= 3 ? nc - 3 : 0; k < nc; ++k) wtimes.push_back(clean[k]);
    }
    WScan scan = extract_W(S, R, wtimes);

    // dispersive field agreement with the final profile
    std::vector<double> agree_t, agree_v;
    const std::vector<cplx>& Wp = scan.W_plus.back();
    const std::vector<cplx>& Wm = scan.W_minus.back();
    for (std::size_t i = 0; i < nf; ++i) {
        if (t[i] < 20.0 || t[i] > std::min(80.0, t_clean)) continue;
        if (std::fmod(t[i], 5.0) != 0.0) continue;
        const ModulationState& st = series.states[i];
        AsymptoticContext ctx;
        ctx.omega_inf = omega_bar;
        ctx.p_inf = p_bar;
        ctx.p_t = st.params.p;
        ctx.sigma_t = st.params.sigma;
        ctx.theta1_t = R.theta1[i];
        ctx.theta2_t = R.theta2[i];
        ComplexField uinf = asymptotic_field(t[i], g, fg, Wp, Wm, ctx);
        ComplexField ulab = fourier_shift(ComplexField{g, st.U.a}, -st.params.sigma);
        double gap = 0.0;
        for (int j = 0; j < g->n; ++j) gap = std::max(gap, std::abs(ulab.v[j] - uinf.v[j]));
        agree_t.push_back(t[i]);
        agree_v.push_back(gap);
    }

    // decay series files
    write_decay_series(t, u_linf, series_path(opt, "decay_u_linf.csv"));
    write_decay_series(t, omega_gap, series_path(opt, "decay_omega_gap.csv"));
    write_decay_series(t, p_gap, series_path(opt, "decay_p_gap.csv"));
    write_decay_series(t, h1a, series_path(opt, "decay_h1_abs.csv"));
    write_decay_series(t, h2a, series_path(opt, "decay_h2_abs.csv"));
    write_decay_series(A.t, A.dt_filtered_h1, series_path(opt, "decay_dh1_filtered.csv"));
    write_decay_series(A.t, A.dt_filtered_h2, series_path(opt, "decay_dh2_filtered.csv"));
    write_decay_series(t, rw, series_path(opt, "decay_R_weighted.csv"));
    write_decay_series(t, bsup, series_path(opt, "decay_B_sup.csv"));
    for (int j = 0; j < 4; ++j)
        write_decay_series(t, dmag[j],
                           series_path(opt, "decay_d" + std::to_string(j + 1) + ".csv"));
    write_decay_series(t, S.conjugation_err, series_path(opt, "scattering_relation.csv"));

    for (double ts : {1.0, 10.0, 40.0, 80.0}) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < nf; ++i)
            if (std::abs(t[i] - ts) < std::abs(t[best] - ts)) best = i;
        char name[64];
        std::snprintf(name, sizeof(name), "spectrum_t%g.csv", t[best]);
        write_spectrum(fg, S.f_plus[best], S.f_minus[best], series_path(opt, name));
    }
    {
        CsvWriter csv(series_path(opt, "scattering_W.csv"),
                      {"xi", "re_wplus", "im_wplus", "re_wminus", "im_wminus"});
        for (int m = 0; m < fg.n_xi; ++m)
            csv.row({fmt17(fg.xi[m]), fmt17(Wp[m].real()), fmt17(Wp[m].imag()),
                     fmt17(Wm[m].real()), fmt17(Wm[m].imag())});
    }

    // slope fits and scalar checks
    const double teff = std::min(80.0, t_clean);
    std::vector<DecayFit> fits;
    fits.push_back(decay_slope("u_linf", t, u_linf, 10.0, teff, -0.5, -0.65, -0.35));
    fits.push_back(decay_slope("omega_gap", t, omega_gap, 10.0, 40.0, -1.0, -5.0, -0.6));
    fits.push_back(decay_slope("p_gap", t, p_gap, 10.0, 40.0, -1.0, -5.0, -0.6));
    fits.push_back(decay_slope("h1_abs", t, h1a, 10.0, std::min(60.0, teff), -0.5, -0.65, -0.35));
    fits.push_back(decay_slope("h2_abs", t, h2a, 10.0, std::min(60.0, teff), -0.5, -0.65, -0.35));
    fits.push_back(decay_slope("dh1_filtered", A.t, A.dt_filtered_h1, 10.0,
                               std::min(60.0, teff), -1.0, -5.0, -0.8));
    fits.push_back(decay_slope("dh2_filtered", A.t, A.dt_filtered_h2, 10.0,
                               std::min(60.0, teff), -1.0, -5.0, -0.8));
    fits.push_back(decay_slope("R_weighted", t, rw, 10.0, teff, -1.0, -5.0, -0.8));
    fits.push_back(decay_slope("B_sup", t, bsup, 10.0, teff, -1.0, -5.0, -0.8));
    for (int j = 0; j < 4; ++j)
        fits.push_back(decay_slope("d" + std::to_string(j + 1) + "_abs", t, dmag[j], 10.0, 40.0,
                                   -1.5, -8.0, -1.1));
    fits.push_back(decay_slope("u_infty_gap", agree_t, agree_v, 20.0, teff, -0.6, -5.0, -0.55));

    struct Scalar {
        std::string name;
        double value, threshold;
        bool pass;
    };
    std::vector<Scalar> scalars;
    {
        double worst = 0.0;
        for (double e : S.conjugation_err) worst = std::max(worst, e);
        scalars.push_back({"scattering_relation_max_err", worst, 1e-8, worst < 1e-8});
    }
    {
        // W stability between t = 40 and the final extraction, eps^2 scale
        double worst = 0.0;
        const auto& W40p = scan.W_plus.front();
        const auto& W40m = scan.W_minus.front();
        for (int m = 0; m < fg.n_xi; ++m)
            worst = std::max({worst, std::abs(Wp[m] - W40p[m]), std::abs(Wm[m] - W40m[m])});
        double band = 5.0 * std::max(eps * eps, 1e-12);
        scalars.push_back({"W_stability_40_to_T", worst, band, worst <= band});
    }
    {
        double worst = 0.0; // pairwise over the last three extractions
        std::size_t ns = scan.t_extract.size();
        for (std::size_t a = ns >= 3 ? ns - 3 : 0; a < ns; ++a)
            for (std::size_t b = a + 1; b < ns; ++b)
                for (int m = 0; m < fg.n_xi; ++m)
                    worst = std::max({worst, std::abs(scan.W_plus[a][m] - scan.W_plus[b][m]),
                                      std::abs(scan.W_minus[a][m] - scan.W_minus[b][m])});
        double band = 5.0 * std::max(eps * eps, 1e-12);
        scalars.push_back({"W_stability_last_three", worst, band, worst <= band});
    }
    {
        const double r = std::sqrt(omega_bar);
        double worst = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            cplx num(std::abs(fg.xi[m]), -r), den(std::abs(fg.xi[m]), r);
            cplx beta = (num * num) / (den * den);
            worst = std::max(worst,
                             std::abs(Wm[m] + beta * std::conj(Wp[fg.n_xi - 1 - m])));
        }
        scalars.push_back({"W_conjugation_max_err", worst, 1e-3, worst < 1e-3});
    }
    {
        std::size_t i1 = 0;
        for (std::size_t i = 0; i < nf; ++i)
            if (std::abs(t[i] - 1.0) < std::abs(t[i1] - 1.0)) i1 = i;
        double supall = 0.0;
        for (double v : S.sup_f) supall = std::max(supall, v);
        double lim = 3.0 * S.sup_f[i1];
        scalars.push_back({"spectrum_sup_bound", supall, lim, supall <= lim});
    }

    bool all = true;
    {
        CsvWriter csv(report_path(opt, "summary.csv"),
                      {"quantity", "slope", "stderr", "predicted", "pass"});
        for (const auto& f : fits) {
            csv.row({f.quantity, fmt17(f.slope), fmt17(f.stderr_), fmt17(f.predicted),
                     f.pass ? "1" : "0"});
            all = all && f.pass;
            note(opt, std::string(f.pass ? "pass " : "FAIL ") + f.quantity + " slope=" +
                          fmt17(f.slope) + " (predicted " + fmt17(f.predicted) + ")");
        }
        for (const auto& s : scalars) {
            csv.row({s.name, fmt17(s.value), "0", fmt17(s.threshold), s.pass ? "1" : "0"});
            all = all && s.pass;
            note(opt, std::string(s.pass ? "pass " : "FAIL ") + s.name + " value=" +
                          fmt17(s.value) + " threshold=" + fmt17(s.threshold));
        }
    }
    return all ? 0 : 1;
}

int run_command(const std::string& name, const CommandOptions& opt) {
    try {
        set_num_threads(opt.threads);
        if (name == "simulate") return cmd_simulate(opt);
        if (name == "fit-modulation") return cmd_fit_modulation(opt);
        if (name == "verify-identities") return cmd_verify_identities(opt);
        if (name == "verify-dft") return cmd_verify_dft(opt);
        if (name == "decay-report") return cmd_decay_report(opt);
        std::cerr << "unknown command: " << name << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace nlslab
