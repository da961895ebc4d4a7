#pragma once
#include <complex>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

// In-place FFT of a power-of-two length n.
// Forward: X_m = sum_j x_j e^{-2 pi i j m / n}, unnormalized.
// Inverse: x_j = (1/n) sum_m X_m e^{+2 pi i j m / n}.
// Plans are cached per length; execution is safe from multiple threads.
void fft(std::vector<cplx>& a);
void ifft(std::vector<cplx>& a);

} // namespace nlslab
