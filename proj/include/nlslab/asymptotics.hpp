#pragma once
#include "nlslab/identities.hpp"
#include "nlslab/modulation.hpp"

namespace nlslab {

// Smooth cutoff: 1 on |xi| <= 1, 0 on |xi| >= 2, glued by e^{-1/s} weights.
double chi0(double xi);

// Profile spectra along a renormalized series:
//   f+(t) = e^{+i t (xi^2 + w)} F+[Pe V(t)],  f- with the conjugate phase.
// Each frame also records the essential first slot v_e, the pointwise defect in
// the conjugation relation f-(xi) = -beta(xi) conj(f+(-xi)), and sup |f+-|.
struct SpectrumSeries {
    double omega_bar = 0.0, p_bar = 0.0;
    FrequencyGrid fgrid;
    std::vector<double> t;
    std::vector<std::vector<cplx>> f_plus, f_minus;
    std::vector<ComplexField> v_e;
    std::vector<double> conjugation_err;
    std::vector<double> sup_f;
};

SpectrumSeries profile_spectra(const RenormalizedSeries& R, const FrequencyGrid& fg);

// Low-frequency amplitudes h1, h2 (chi0-weighted xi-integrals of the profile
// on a dedicated fine grid) and centered-difference derivatives of the
// carrier-filtered amplitudes e^{+i t w} h1, e^{-i t w} h2.
struct AmplitudeSeries {
    std::vector<double> t;
    std::vector<cplx> h1, h2;
    std::vector<double> dt_filtered_h1, dt_filtered_h2;
};

AmplitudeSeries amplitudes_h(const RenormalizedSeries& R, const FrequencyGrid& hgrid);

// R_v = v_e - h1 Phi1 + h2 Phi2 with Phi1 = tanh^2/sqrt(2pi), Phi2 = -sech^2/sqrt(2pi).
ComplexField remainder_R(const ComplexField& v_e, cplx h1, cplx h2, double omega_bar);

// sup_y |f(y)| / (1 + y^2)
double weighted_sup(const ComplexField& f);

// Log-log least-squares decay fit over t_min <= t <= t_max. Samples must be
// positive inside the window. pass = band_lo <= slope <= band_hi.
struct DecayFit {
    std::string quantity;
    double t_min = 0.0, t_max = 0.0;
    double slope = 0.0, stderr_ = 0.0;
    double predicted = 0.0;
    double band_lo = 0.0, band_hi = 0.0;
    bool pass = false;
    int n_samples = 0;
};

DecayFit decay_slope(const std::string& quantity, const std::vector<double>& t,
                     const std::vector<double>& value, double t_min, double t_max,
                     double predicted, double band_lo, double band_hi);

// Scattering profiles W+-(t) = e^{-+i Lambda+-} e^{+-i theta1} e^{-i theta2 xi} f+-,
// with Lambda+-(t, xi) = (1/2) int_1^t |f+-(s, xi)|^2 ds/s by trapezoid in log s.
struct WScan {
    FrequencyGrid fgrid;
    std::vector<double> t_extract;
    std::vector<std::vector<cplx>> W_plus, W_minus;
};

WScan extract_W(const SpectrumSeries& S, const RenormalizedSeries& R,
                const std::vector<double>& at_times);

// Dispersive asymptotic field built from a scattering profile: stationary
// frequency xi* = (x - sigma) / (2t), quadratic phase, log-time correction,
// and the two half-bound-state dressings. xi* is clamped to the profile grid
// (flagged through *clamped).
struct AsymptoticContext {
    double omega_inf = 0.0, p_inf = 0.0;
    double p_t = 0.0, sigma_t = 0.0;
    double theta1_t = 0.0, theta2_t = 0.0;
};

ComplexField asymptotic_field(double t, const GridPtr& g, const FrequencyGrid& fg,
                              const std::vector<cplx>& W_plus, const std::vector<cplx>& W_minus,
                              const AsymptoticContext& ctx, bool* clamped = nullptr);

// Quadratic normal-form spectrum assembled from the amplitudes and the frakq
// coefficients; returns sup_xi (1 + xi^2) |B(t, xi)|.
double normal_form_sup(double t, cplx h1, cplx h2, double omega_bar, const FrakQ& fq);

} // namespace nlslab
