#pragma once

#include <vector>

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// One-sided power spectrum on the grid k/(N*dt), k = 0..floor(N/2).
/// Bin powers are scaled so their sum equals the time-domain energy
/// (Parseval), with DC and Nyquist counted once and interior bins twice.
struct PowerSpectrum {
    std::vector<double> frequency_hz;
    std::vector<double> power;

    std::size_t size() const noexcept { return frequency_hz.size(); }
    double total() const noexcept;
    /// Index of the strongest bin.
    std::size_t peak_bin() const noexcept;
};

PowerSpectrum power_spectrum(const Signal& s);

}  // namespace mfvmd
