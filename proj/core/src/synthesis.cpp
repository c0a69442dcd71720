#include "mfvmd/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mfvmd/error.hpp"

namespace mfvmd {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void PiecewiseToneSpec::validate() const {
    if (segments.empty()) throw Error("bad-config", "piecewise spec needs at least one segment");
    if (!(fs_hz > 0.0) || !std::isfinite(fs_hz)) throw Error("bad-config", "sampling rate must be positive");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (!(seg.end_s > seg.start_s)) throw Error("bad-config", "segment must have positive duration");
        if (!(seg.frequency_hz < 0.5 * fs_hz))
            throw Error("bad-config", "segment frequency at or above Nyquist");
        if (seg.frequency_hz < 0.0 || !std::isfinite(seg.amplitude))
            throw Error("bad-config", "invalid segment frequency or amplitude");
        if (i > 0 && segments[i - 1].end_s != seg.start_s)
            throw Error("bad-config", "segments must be contiguous and ascending");
    }
}

double PiecewiseToneSpec::duration() const {
    return segments.empty() ? 0.0 : segments.back().end_s - segments.front().start_s;
}

PiecewiseToneSpec two_tone_switch_spec(double fs_hz) {
    PiecewiseToneSpec spec;
    spec.fs_hz = fs_hz;
    spec.segments = {
        {0.0, 0.8e-3, 10000.0, 1.0},
        {0.8e-3, 1.2e-3, 20000.0, 1.0},
        {1.2e-3, 2.0e-3, 10000.0, 1.0},
    };
    return spec;
}

Signal gen_piecewise(const PiecewiseToneSpec& spec) {
    spec.validate();
    const double dt = 1.0 / spec.fs_hz;
    const double t_begin = spec.segments.front().start_s;
    const double t_end = spec.segments.back().end_s;
    const auto n = static_cast<std::size_t>(std::llround((t_end - t_begin) * spec.fs_hz));

    std::vector<double> samples(std::max<std::size_t>(n, 2), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = t_begin + static_cast<double>(i) * dt;
        // Segments are (start, end]; the very first instant belongs to
        // the first segment.
        const ToneSegment* seg = nullptr;
        for (const auto& candidate : spec.segments) {
            if ((t > candidate.start_s && t <= candidate.end_s) ||
                (t == spec.segments.front().start_s && &candidate == &spec.segments.front())) {
                seg = &candidate;
                break;
            }
        }
        if (seg == nullptr) seg = &spec.segments.back();
        samples[i] = seg->amplitude * std::sin(kTwoPi * seg->frequency_hz * t);
    }
    return Signal(std::move(samples), dt, t_begin);
}

ToneReferences two_tone_references(double fs_hz) {
    const PiecewiseToneSpec spec = two_tone_switch_spec(fs_hz);
    const Signal full = gen_piecewise(spec);
    std::vector<double> low(full.size(), 0.0), high(full.size(), 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) {
        const double t = full.time_at(i);
        const bool in_high = t > spec.segments[1].start_s && t <= spec.segments[1].end_s;
        (in_high ? high : low)[i] = full[i];
    }
    return ToneReferences{Signal(std::move(low), full.dt(), full.t0()),
                          Signal(std::move(high), full.dt(), full.t0())};
}

Signal add_noise(const Signal& s, double snr_target_db, std::uint64_t seed) {
    if (!std::isfinite(snr_target_db))
        throw Error("bad-config", "SNR target must be finite (infinite SNR means no noise)");
    const double p_signal = s.power();
    if (p_signal == 0.0) throw Error("zero-power", "cannot set an SNR against a zero-power signal");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(s.size());
    double p_noise = 0.0;
    for (double& v : noise) {
        v = gauss(rng);
        p_noise += v * v;
    }
    p_noise /= static_cast<double>(s.size());

    // Scaling against the measured noise power makes the realized SNR hit
    // the target up to rounding.
    const double gain = std::sqrt(p_signal / (p_noise * std::pow(10.0, snr_target_db / 10.0)));
    std::vector<double> noisy(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) noisy[i] = s[i] + gain * noise[i];
    return s.with_samples(std::move(noisy));
}

void BoltEchoSpec::validate() const {
    if (!(wave_velocity_mps > 0.0) || !(bolt_length_m > 0.0))
        throw Error("bad-config", "bolt length and wave velocity must be positive");
    if (!(echo_amplitude >= 0.0) || echo_amplitude > 1.0)
        throw Error("bad-config", "echo amplitude must lie in [0, 1]");
    if (!(fs_hz > 0.0) || !(record_length_s > 0.0) || !(pulse_width_s > 0.0) || !(decay_time_s > 0.0))
        throw Error("bad-config", "rates, durations and decay must be positive");
    if (!(pulse_center_freq_hz > 0.0) || pulse_center_freq_hz >= 0.5 * fs_hz)
        throw Error("bad-config", "pulse center frequency must lie below Nyquist");
    if (!(echo_time_s() < record_length_s))
        throw Error("bad-config", "echo arrives beyond the record end");
}

Signal gen_bolt_echo(const BoltEchoSpec& spec) {
    spec.validate();
    const double dt = 1.0 / spec.fs_hz;
    const auto n = static_cast<std::size_t>(std::llround(spec.record_length_s * spec.fs_hz));
    const double sigma = spec.pulse_width_s / 6.0;
    const double t_echo = spec.echo_time_s();

    auto pulse = [&](double t, double center) {
        const double u = t - center;
        return std::exp(-0.5 * u * u / (sigma * sigma)) *
               std::sin(kTwoPi * spec.pulse_center_freq_hz * u);
    };

    std::vector<double> samples(std::max<std::size_t>(n, 2));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        const double v = pulse(t, 0.0) + spec.echo_amplitude * pulse(t, t_echo);
        samples[i] = v * std::exp(-t / spec.decay_time_s);
    }
    return Signal(std::move(samples), dt, 0.0);
}

}  // namespace mfvmd
