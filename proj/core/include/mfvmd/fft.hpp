#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mfvmd {

/// Unnormalized forward DFT, X[k] = sum_n x[n] e^{-2*pi*i*k*n/N}.
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x);

/// Inverse DFT with 1/N normalization, ifft(fft(x)) == x.
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x);

/// Forward DFT of a real series (full-length complex result).
std::vector<std::complex<double>> fft_real(std::span<const double> x);

}  // namespace mfvmd
