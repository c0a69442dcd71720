#include "mfvmd/spectrum.hpp"

#include <complex>

#include "mfvmd/fft.hpp"

namespace mfvmd {

double PowerSpectrum::total() const noexcept {
    double t = 0.0;
    for (double p : power) t += p;
    return t;
}

std::size_t PowerSpectrum::peak_bin() const noexcept {
    std::size_t best = 0;
    for (std::size_t k = 1; k < power.size(); ++k)
        if (power[k] > power[best]) best = k;
    return best;
}

PowerSpectrum power_spectrum(const Signal& s) {
    const std::size_t n = s.size();
    const auto spec = fft_real(s.samples());

    const std::size_t half = n / 2;  // inclusive top bin
    PowerSpectrum out;
    out.frequency_hz.resize(half + 1);
    out.power.resize(half + 1);

    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k <= half; ++k) {
        out.frequency_hz[k] = static_cast<double>(k) * inv_n / s.dt();
        // Interior bins carry the conjugate half too; DC (and Nyquist when
        // N is even) appear once in the full spectrum.
        const bool self_paired = (k == 0) || (n % 2 == 0 && k == half);
        const double weight = self_paired ? 1.0 : 2.0;
        out.power[k] = weight * std::norm(spec[k]) * inv_n;
    }
    return out;
}

}  // namespace mfvmd
