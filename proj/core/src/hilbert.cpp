#include "mfvmd/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "mfvmd/error.hpp"
#include "mfvmd/fft.hpp"

namespace mfvmd {

ComplexSignal analytic_signal(const Signal& s) {
    const std::size_t n = s.size();
    if (n < 4) throw Error("bad-signal", "analytic signal needs at least 4 samples");

    auto spec = fft_real(s.samples());

    // One-sided construction: double positive bins, zero negative bins,
    // leave DC (and Nyquist for even n) untouched.
    const std::size_t half = n / 2;
    const std::size_t top_positive = (n % 2 == 0) ? half - 1 : half;
    for (std::size_t k = 1; k <= top_positive; ++k) spec[k] *= 2.0;
    for (std::size_t k = half + 1; k < n; ++k) spec[k] = 0.0;

    auto a = ifft(spec);
    return ComplexSignal(std::move(a), s.dt(), s.t0());
}

InstFreqSeries instantaneous_frequency(const ComplexSignal& a) {
    const std::size_t n = a.size();
    if (n < 2) throw Error("bad-signal", "instantaneous frequency needs at least 2 samples");

    InstFreqSeries out;
    out.dt = a.dt();
    out.t0 = a.t0();
    out.amps.resize(n);
    out.freqs.resize(n);

    std::vector<double> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.amps[i] = std::abs(a[i]);
        phase[i] = std::arg(a[i]);
        if (out.amps[i] == 0.0) out.gaps.push_back(i);
    }

    // Unwrap: keep successive phase differences within (-pi, pi].
    constexpr double pi = std::numbers::pi;
    double offset = 0.0;
    std::vector<double> unwrapped(n);
    unwrapped[0] = phase[0];
    for (std::size_t i = 1; i < n; ++i) {
        double d = phase[i] - phase[i - 1];
        if (d > pi) offset -= 2.0 * pi;
        else if (d < -pi) offset += 2.0 * pi;
        unwrapped[i] = phase[i] + offset;
    }

    const double two_pi_dt = 2.0 * pi * a.dt();
    for (std::size_t i = 0; i < n; ++i) {
        double f;
        if (i == 0) f = (unwrapped[1] - unwrapped[0]) / two_pi_dt;
        else if (i == n - 1) f = (unwrapped[n - 1] - unwrapped[n - 2]) / two_pi_dt;
        else f = (unwrapped[i + 1] - unwrapped[i - 1]) / (2.0 * two_pi_dt);
        if (f < 0.0) {
            f = 0.0;
            ++out.clamped_negative;
        }
        out.freqs[i] = f;
    }
    for (std::size_t gap : out.gaps) out.freqs[gap] = std::numeric_limits<double>::quiet_NaN();
    return out;
}

HilbertSpectrum hilbert_spectrum(const std::vector<Signal>& modes) {
    if (modes.empty()) throw Error("empty-series", "hilbert spectrum needs at least one mode");
    const std::size_t n = modes.front().size();
    const double dt = modes.front().dt();
    for (const Signal& m : modes)
        if (m.size() != n || m.dt() != dt)
            throw Error("length-mismatch", "modes must share one time grid");

    HilbertSpectrum spec;
    spec.dt = dt;
    spec.t0 = modes.front().t0();
    spec.length = n;
    spec.per_mode.reserve(modes.size());
    for (const Signal& m : modes) {
        bool all_zero = true;
        for (double v : m.samples())
            if (v != 0.0) { all_zero = false; break; }
        if (all_zero) {
            // Degenerate mode: every sample is a gap.
            InstFreqSeries s;
            s.dt = dt;
            s.t0 = m.t0();
            s.freqs.assign(n, std::numeric_limits<double>::quiet_NaN());
            s.amps.assign(n, 0.0);
            s.gaps.resize(n);
            for (std::size_t i = 0; i < n; ++i) s.gaps[i] = i;
            spec.per_mode.push_back(std::move(s));
        } else {
            spec.per_mode.push_back(instantaneous_frequency(analytic_signal(m)));
        }
    }
    return spec;
}

std::vector<double> dominant_ridge(const HilbertSpectrum& spectrum) {
    const std::size_t n = spectrum.length;
    std::vector<double> ridge(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        double best_amp = 0.0;
        for (const auto& mode : spectrum.per_mode) {
            if (std::isnan(mode.freqs[i])) continue;
            if (mode.amps[i] >= best_amp) {
                best_amp = mode.amps[i];
                ridge[i] = mode.freqs[i];
            }
        }
    }
    return ridge;
}

namespace {

double median_of(std::vector<double>& scratch) {
    std::sort(scratch.begin(), scratch.end());
    const std::size_t m = scratch.size();
    return (m % 2 == 1) ? scratch[m / 2] : 0.5 * (scratch[m / 2 - 1] + scratch[m / 2]);
}

}  // namespace

std::vector<double> detect_frequency_steps(const std::vector<double>& ridge_hz, double dt, double t0,
                                           double low_hz, double high_hz, std::size_t median_window) {
    if (ridge_hz.size() < 3) throw Error("bad-signal", "ridge too short");
    if (median_window % 2 == 0) ++median_window;
    const std::size_t n = ridge_hz.size();
    const std::size_t hw = median_window / 2;

    // Median filter suppresses isolated outliers before thresholding.
    std::vector<double> smooth(n);
    std::vector<double> win;
    win.reserve(median_window);
    for (std::size_t i = 0; i < n; ++i) {
        win.clear();
        const std::size_t lo = (i >= hw) ? i - hw : 0;
        const std::size_t hi = std::min(n - 1, i + hw);
        for (std::size_t j = lo; j <= hi; ++j)
            if (!std::isnan(ridge_hz[j])) win.push_back(ridge_hz[j]);
        smooth[i] = win.empty() ? std::numeric_limits<double>::quiet_NaN() : median_of(win);
    }

    const double mid = 0.5 * (low_hz + high_hz);
    std::vector<double> times;
    bool have_state = false;
    bool above = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(smooth[i])) continue;
        const bool now_above = smooth[i] > mid;
        if (have_state && now_above != above)
            times.push_back(t0 + static_cast<double>(i) * dt);
        above = now_above;
        have_state = true;
    }
    return times;
}

SpectrumImage rasterize_spectrum(const HilbertSpectrum& spectrum, std::size_t freq_bins,
                                 std::size_t time_cols) {
    if (spectrum.per_mode.empty() || spectrum.length == 0)
        throw Error("empty-series", "cannot rasterize an empty spectrum");
    time_cols = std::min(time_cols, spectrum.length);

    SpectrumImage img;
    img.freq_bins = freq_bins;
    img.time_cols = time_cols;
    img.nyquist_hz = 0.5 / spectrum.dt;
    img.t0 = spectrum.t0;
    img.duration = static_cast<double>(spectrum.length) * spectrum.dt;
    img.intensity.assign(freq_bins * time_cols, 0.0);

    for (const auto& mode : spectrum.per_mode) {
        for (std::size_t i = 0; i < spectrum.length; ++i) {
            if (std::isnan(mode.freqs[i]) || mode.amps[i] <= 0.0) continue;
            std::size_t col = i * time_cols / spectrum.length;
            std::size_t row = static_cast<std::size_t>(mode.freqs[i] / img.nyquist_hz * static_cast<double>(freq_bins));
            if (row >= freq_bins) row = freq_bins - 1;
            img.intensity[row * time_cols + col] += mode.amps[i];
        }
    }
    return img;
}

}  // namespace mfvmd
