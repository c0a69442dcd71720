#pragma once

#include <cstddef>
#include <vector>

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// Discrete analytic signal via one-sided spectrum doubling: negative
/// bins zeroed, DC and Nyquist kept unscaled, positive bins doubled.
/// The real part reproduces the input; strictly negative frequencies
/// carry no energy. Needs length >= 4.
ComplexSignal analytic_signal(const Signal& s);

/// Per-sample instantaneous frequency and amplitude of an analytic signal.
struct InstFreqSeries {
    /// Hz, one per sample; central phase differences in the interior,
    /// one-sided at the ends. NaN at gap samples.
    std::vector<double> freqs;
    /// |a[n]|.
    std::vector<double> amps;
    double dt = 0.0;
    double t0 = 0.0;
    /// Samples where the amplitude is exactly zero: frequency undefined.
    std::vector<std::size_t> gaps;
    /// How many raw negative frequency estimates were clamped to 0.
    std::size_t clamped_negative = 0;

    std::size_t size() const noexcept { return freqs.size(); }
    double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
};

/// Unwrapped-phase derivative of the analytic signal. Raw negative
/// frequencies are clamped to 0 and counted, not hidden; zero-amplitude
/// samples become flagged gaps (NaN), never arbitrary numbers.
InstFreqSeries instantaneous_frequency(const ComplexSignal& a);

/// Instantaneous frequency/amplitude per mode on the shared time grid.
struct HilbertSpectrum {
    std::vector<InstFreqSeries> per_mode;
    double dt = 0.0;
    double t0 = 0.0;
    std::size_t length = 0;

    std::size_t mode_count() const noexcept { return per_mode.size(); }
};

/// Builds the spectrum from decomposed mode signals (all on one grid).
HilbertSpectrum hilbert_spectrum(const std::vector<Signal>& modes);

/// At each time step, the frequency of the mode with the largest
/// instantaneous amplitude (the dominant ridge). NaN where every mode
/// has a gap.
std::vector<double> dominant_ridge(const HilbertSpectrum& spectrum);

/// Times where a median-filtered ridge crosses the midpoint between two
/// frequency plateaus; used to locate frequency-switch instants.
std::vector<double> detect_frequency_steps(const std::vector<double>& ridge_hz, double dt, double t0,
                                           double low_hz, double high_hz,
                                           std::size_t median_window = 9);

/// Amplitude-weighted time-frequency intensity grid (for rendering):
/// `freq_bins` rows spanning [0, nyquist_hz), `time_cols` columns spanning
/// the record. Row-major, intensity[row * time_cols + col].
struct SpectrumImage {
    std::size_t freq_bins = 0;
    std::size_t time_cols = 0;
    double nyquist_hz = 0.0;
    double t0 = 0.0;
    double duration = 0.0;
    std::vector<double> intensity;
};

SpectrumImage rasterize_spectrum(const HilbertSpectrum& spectrum, std::size_t freq_bins = 256,
                                 std::size_t time_cols = 512);

}  // namespace mfvmd
