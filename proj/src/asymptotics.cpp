#include "nlslab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {
namespace {

constexpr double SQRT_2PI = 2.5066282746310002;

cplx unit_phase(double ph) { return cplx(std::cos(ph), std::sin(ph)); }

// beta(xi) = (|xi| - i r)^2 / (|xi| + i r)^2, the unimodular conjugation factor
cplx beta_factor(double xi, double r) {
    cplx num(std::abs(xi), -r), den(std::abs(xi), r);
    return (num * num) / (den * den);
}

} // namespace

double chi0(double xi) {
    double s = std::abs(xi);
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    auto gfun = [](double u) { return std::exp(-1.0 / u); };
    double a = gfun(2.0 - s), b = gfun(s - 1.0);
    return a / (a + b);
}

SpectrumSeries profile_spectra(const RenormalizedSeries& R, const FrequencyGrid& fg) {
    SpectrumSeries S;
    S.omega_bar = R.omega_bar;
    S.p_bar = R.p_bar;
    S.fgrid = fg;
    S.t = R.t;
    const std::size_t n = R.t.size();
    S.f_plus.resize(n);
    S.f_minus.resize(n);
    S.v_e.reserve(n);
    S.conjugation_err.resize(n);
    S.sup_f.resize(n);

    const double r = std::sqrt(R.omega_bar);
    std::vector<cplx> beta(fg.n_xi);
    for (int m = 0; m < fg.n_xi; ++m) beta[m] = beta_factor(fg.xi[m], r);

    for (std::size_t i = 0; i < n; ++i) {
        VectorField Pe = project_essential(R.V[i], R.omega_bar);
        DistortedSpectrum sp = dft_forward(Pe, R.omega_bar, fg);
        sp = propagate_spectrum(sp, R.t[i]);
        S.v_e.push_back(ComplexField{Pe.grid, Pe.a});

        double worst = 0.0, sup = 0.0;
        for (int m = 0; m < fg.n_xi; ++m) {
            int mr = fg.n_xi - 1 - m; // node at -xi
            cplx predicted = -beta[m] * std::conj(sp.f_plus[mr]);
            worst = std::max(worst, std::abs(sp.f_minus[m] - predicted));
            sup = std::max({sup, std::abs(sp.f_plus[m]), std::abs(sp.f_minus[m])});
        }
        S.conjugation_err[i] = worst;
        S.sup_f[i] = sup;
        S.f_plus[i] = std::move(sp.f_plus);
        S.f_minus[i] = std::move(sp.f_minus);
    }
    return S;
}

AmplitudeSeries amplitudes_h(const RenormalizedSeries& R, const FrequencyGrid& hgrid) {
    AmplitudeSeries A;
    A.t = R.t;
    const std::size_t n = R.t.size();
    A.h1.resize(n);
    A.h2.resize(n);

    std::vector<double> chi(hgrid.n_xi);
    for (int m = 0; m < hgrid.n_xi; ++m) chi[m] = chi0(hgrid.xi[m]);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = R.t[i];
        VectorField Pe = project_essential(R.V[i], R.omega_bar);
        DistortedSpectrum sp = dft_forward(Pe, R.omega_bar, hgrid);
        sp = propagate_spectrum(sp, t);
        cplx s1 = 0.0, s2 = 0.0;
        for (int m = 0; m < hgrid.n_xi; ++m) {
            if (chi[m] == 0.0) continue;
            double w = hgrid.weight(m) * chi[m];
            double ph = t * hgrid.xi[m] * hgrid.xi[m];
            s1 += w * unit_phase(-ph) * sp.f_plus[m];
            s2 += w * unit_phase(ph) * sp.f_minus[m];
        }
        A.h1[i] = unit_phase(-t * R.omega_bar) * s1;
        A.h2[i] = unit_phase(t * R.omega_bar) * s2;
    }

    // centered-difference derivatives of the carrier-filtered amplitudes
    A.dt_filtered_h1.assign(n, 0.0);
    A.dt_filtered_h2.assign(n, 0.0);
    if (n >= 3) {
        std::vector<cplx> F1(n), F2(n);
        for (std::size_t i = 0; i < n; ++i) {
            F1[i] = unit_phase(R.t[i] * R.omega_bar) * A.h1[i];
            F2[i] = unit_phase(-R.t[i] * R.omega_bar) * A.h2[i];
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h2step = R.t[i + 1] - R.t[i - 1];
            A.dt_filtered_h1[i] = std::abs((F1[i + 1] - F1[i - 1]) / h2step);
            A.dt_filtered_h2[i] = std::abs((F2[i + 1] - F2[i - 1]) / h2step);
        }
        A.dt_filtered_h1[0] = A.dt_filtered_h1[1];
        A.dt_filtered_h2[0] = A.dt_filtered_h2[1];
        A.dt_filtered_h1[n - 1] = A.dt_filtered_h1[n - 2];
        A.dt_filtered_h2[n - 1] = A.dt_filtered_h2[n - 2];
    }
    return A;
}

ComplexField remainder_R(const ComplexField& v_e, cplx h1, cplx h2, double omega_bar) {
    const GridPtr& g = v_e.grid;
    const double r = std::sqrt(omega_bar), c = 1.0 / SQRT_2PI;
    ComplexField R{g, v_e.v};
    for (int j = 0; j < g->n; ++j) {
        double T = std::tanh(r * g->x[j]);
        double phi1 = c * T * T, phi2 = -c * (1.0 - T * T);
        R.v[j] -= h1 * phi1 - h2 * phi2;
    }
    return R;
}

double weighted_sup(const ComplexField& f) {
    double s = 0.0;
    for (int j = 0; j < f.grid->n; ++j) {
        double y = f.grid->x[j];
        s = std::max(s, std::abs(f.v[j]) / (1.0 + y * y));
    }
    return s;
}

DecayFit decay_slope(const std::string& quantity, const std::vector<double>& t,
                     const std::vector<double>& value, double t_min, double t_max,
                     double predicted, double band_lo, double band_hi) {
    if (t.size() != value.size()) throw ConfigError("decay_slope: length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_min || t[i] > t_max) continue;
        if (!(value[i] > 0.0))
            throw NumericalError("decay_slope: nonpositive sample for " + quantity + " at t = " +
                                 std::to_string(t[i]));
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(value[i]));
    }
    const std::size_t n = lx.size();
    if (n < 5) throw NumericalError("decay_slope: fewer than 5 samples in window for " + quantity);

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ly[i] - slope * lx[i] - intercept;
        ss += r * r;
    }
    double se = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;

    DecayFit fit;
    fit.quantity = quantity;
    fit.t_min = t_min;
    fit.t_max = t_max;
    fit.slope = slope;
    fit.stderr_ = se;
    fit.predicted = predicted;
    fit.band_lo = band_lo;
    fit.band_hi = band_hi;
    fit.pass = band_lo <= slope && slope <= band_hi;
    fit.n_samples = static_cast<int>(n);
    return fit;
}

WScan extract_W(const SpectrumSeries& S, const RenormalizedSeries& R,
                const std::vector<double>& at_times) {
    if (S.t != R.t) throw ConfigError("extract_W: spectrum and series frames differ");
    const FrequencyGrid& fg = S.fgrid;

    WScan scan;
    scan.fgrid = fg;

    // running Lambda accumulators from the first frame with t >= 1
    std::vector<double> Lp(fg.n_xi, 0.0), Lm(fg.n_xi, 0.0);
    std::size_t i0 = 0;
    while (i0 < S.t.size() && S.t[i0] < 1.0) ++i0;
    if (i0 == S.t.size()) throw ConfigError("extract_W: no frames at t >= 1");

    // nearest stored frame (with t >= 1) per requested time, kept sorted
    std::vector<std::size_t> targets;
    for (double want : at_times) {
        std::size_t best = i0;
        for (std::size_t i = i0; i < S.t.size(); ++i)
            if (std::abs(S.t[i] - want) < std::abs(S.t[best] - want)) best = i;
        targets.push_back(best);
    }
    std::sort(targets.begin(), targets.end());

    auto emit = [&](std::size_t i) {
        std::vector<cplx> Wp(fg.n_xi), Wm(fg.n_xi);
        for (int m = 0; m < fg.n_xi; ++m) {
            cplx phase_p = unit_phase(-0.5 * Lp[m] + R.theta1[i] - R.theta2[i] * fg.xi[m]);
            cplx phase_m = unit_phase(0.5 * Lm[m] - R.theta1[i] - R.theta2[i] * fg.xi[m]);
            Wp[m] = phase_p * S.f_plus[i][m];
            Wm[m] = phase_m * S.f_minus[i][m];
        }
        scan.t_extract.push_back(S.t[i]);
        scan.W_plus.push_back(std::move(Wp));
        scan.W_minus.push_back(std::move(Wm));
    };

    std::size_t wi = 0;
    for (std::size_t i = i0; i < S.t.size() && wi < targets.size(); ++i) {
        if (i > i0) {
            double dtau = std::log(S.t[i]) - std::log(S.t[i - 1]);
            for (int m = 0; m < fg.n_xi; ++m) {
                Lp[m] += 0.5 * dtau *
                         (std::norm(S.f_plus[i - 1][m]) + std::norm(S.f_plus[i][m]));
                Lm[m] += 0.5 * dtau *
                         (std::norm(S.f_minus[i - 1][m]) + std::norm(S.f_minus[i][m]));
            }
        }
        while (wi < targets.size() && targets[wi] == i) {
            emit(i);
            ++wi;
        }
    }
    return scan;
}

ComplexField asymptotic_field(double t, const GridPtr& g, const FrequencyGrid& fg,
                              const std::vector<cplx>& W_plus, const std::vector<cplx>& W_minus,
                              const AsymptoticContext& ctx, bool* clamped) {
    if (!(t > 0.0)) throw ConfigError("asymptotic_field: t must be positive");
    const double r = std::sqrt(ctx.omega_inf);
    bool did_clamp = false;

    auto interp = [&](const std::vector<cplx>& W, double xi) -> cplx {
        double u = (xi - fg.xi[0]) / fg.dxi;
        int m = static_cast<int>(std::floor(u));
        if (m < 0) m = 0;
        if (m > fg.n_xi - 2) m = fg.n_xi - 2;
        double w = u - m;
        return (1.0 - w) * W[m] + w * W[m + 1];
    };

    ComplexField out = make_field(g);
    const double logt = std::log(t);
    for (int j = 0; j < g->n; ++j) {
        double x = g->x[j];
        double ystar = x - ctx.sigma_t;
        double xis = ystar / (2.0 * t);
        if (std::abs(xis) > fg.xi_max) {
            xis = std::copysign(fg.xi_max, xis);
            did_clamp = true;
        }
        double Omega = -0.25 * M_PI + 2.0 * t * (ctx.p_inf - ctx.p_t) * xis - t * ctx.omega_inf +
                       t * xis * xis - ctx.theta1_t + ctx.theta2_t * xis;
        cplx Wp = interp(W_plus, xis);
        cplx Wm_at = interp(W_minus, xis);   // enters the log-phase modulus
        cplx Wm_ref = interp(W_minus, -xis); // enters the amplitude
        double T = std::tanh(r * ystar);
        cplx den(std::abs(xis), -r);
        cplx D = 1.0 / (den * den);
        cplx num(xis, r * T);
        cplx m1 = num * num * D;
        cplx m2 = ctx.omega_inf * (1.0 - T * T) * D;
        cplx term1 = unit_phase(Omega - logt * std::norm(Wp)) * Wp * m1;
        cplx term2 = unit_phase(-Omega + logt * std::norm(Wm_at)) * Wm_ref * m2;
        out.v[j] = (term1 - term2) / std::sqrt(2.0 * t);
    }
    if (clamped) *clamped = did_clamp;
    return out;
}

double normal_form_sup(double t, cplx h1, cplx h2, double omega_bar, const FrakQ& fq) {
    const cplx g1 = unit_phase(t * omega_bar) * h1;
    const cplx g2 = unit_phase(-t * omega_bar) * h2;
    double sup = 0.0;
    for (std::size_t m = 0; m < fq.xi.size(); ++m) {
        double xi = fq.xi[m];
        cplx B = unit_phase(t * (xi * xi - omega_bar)) * g1 * g1 * fq.q1[m] +
                 unit_phase(t * (xi * xi + omega_bar)) * g1 * g2 * fq.q2[m] +
                 unit_phase(t * (xi * xi + 3.0 * omega_bar)) * g2 * g2 * fq.q3[m];
        sup = std::max(sup, (1.0 + xi * xi) * std::abs(B));
    }
    return sup;
}

} // namespace nlslab
