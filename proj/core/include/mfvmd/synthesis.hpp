#pragma once

#include <cstdint>
#include <vector>

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// Piecewise pure-tone signal: contiguous segments, each a globally
/// phase-referenced sinusoid amplitude*sin(2*pi*f*t).
struct ToneSegment {
    double start_s = 0.0;
    double end_s = 0.0;
    double frequency_hz = 0.0;
    double amplitude = 1.0;
};

struct PiecewiseToneSpec {
    std::vector<ToneSegment> segments;
    double fs_hz = 0.0;

    /// Throws Error("bad-config") on gaps, overlaps, non-ascending
    /// segments, or frequencies at/above fs/2.
    void validate() const;
    double duration() const;
};

/// The two-tone switching test signal: 10 kHz until 0.8 ms, 20 kHz until
/// 1.2 ms, then 10 kHz again until 2 ms; unit amplitude, fs = 1 MHz.
PiecewiseToneSpec two_tone_switch_spec(double fs_hz = 1.0e6);

/// Sample i sits at t = i/fs; its value is the sinusoid of the segment
/// containing t (segments are (start, end]; t = first start belongs to
/// the first segment).
Signal gen_piecewise(const PiecewiseToneSpec& spec);

/// The two ideal narrowband components of the two-tone signal: the
/// gated low tone (segments 1 and 3) and the gated high tone (segment 2),
/// used as references when scoring decompositions.
struct ToneReferences {
    Signal low;
    Signal high;
};
ToneReferences two_tone_references(double fs_hz = 1.0e6);

/// Adds seeded white Gaussian noise scaled so snr_db(s, s + n) hits the
/// target exactly (noise is scaled by its own measured power).
/// Throws Error("zero-power") for an all-zero input and
/// Error("bad-config") for a non-finite target.
Signal add_noise(const Signal& s, double snr_target_db, std::uint64_t seed);

/// Synthetic bolt-anchoring echo record: Gaussian-windowed sinusoid at
/// t = 0 (the direct wave) plus a scaled replica at t = 2*length/velocity
/// (the bottom reflection), under an exponential decay envelope.
struct BoltEchoSpec {
    double bolt_length_m = 3.0;
    double wave_velocity_mps = 6000.0;
    double pulse_center_freq_hz = 20000.0;
    /// Full nominal pulse duration; the Gaussian window sigma is width/6.
    double pulse_width_s = 0.3e-3;
    /// Echo amplitude relative to the direct wave, in [0, 1]; zero means
    /// no reflection (used for detector negative tests).
    double echo_amplitude = 0.5;
    double record_length_s = 3.92e-3;
    double fs_hz = 250000.0;
    /// Amplitude decay time constant of the propagation medium.
    double decay_time_s = 1.5e-3;

    double echo_time_s() const { return 2.0 * bolt_length_m / wave_velocity_mps; }
    /// Throws Error("bad-config") when the echo falls beyond the record
    /// or any parameter is out of range.
    void validate() const;
};

Signal gen_bolt_echo(const BoltEchoSpec& spec);

}  // namespace mfvmd
