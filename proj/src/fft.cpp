#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nlslab {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

// FFTW_UNALIGNED so the cached plan applies to any buffer of the right length
// via the new-array execute interface, which is thread-safe.
PlanPair plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<cplx> dummy(n);
    auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
    PlanPair pp;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pp.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, flags);
    pp.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, flags);
    if (!pp.fwd || !pp.bwd) throw std::runtime_error("fft: plan creation failed");
    cache.emplace(n, pp);
    return pp;
}

} // namespace

void fft(std::vector<cplx>& a) {
    if (a.empty()) return;
    PlanPair pp = plans_for(a.size());
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(pp.fwd, buf, buf);
}

void ifft(std::vector<cplx>& a) {
    if (a.empty()) return;
    PlanPair pp = plans_for(a.size());
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(pp.bwd, buf, buf);
    const double s = 1.0 / static_cast<double>(a.size());
    for (auto& z : a) z *= s;
}

} // namespace nlslab
