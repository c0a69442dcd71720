#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mfvmd/hilbert.hpp"
#include "mfvmd/signal.hpp"

namespace mfvmd {

/// All plotters return a standalone SVG document (XML header included)
/// with time in ms, frequency in kHz, and raw amplitude on the axes.
/// Empty mode lists throw Error("empty-series").

/// Single waveform.
std::string plot_signal(const Signal& s, const std::string& title);

/// One stacked panel per mode, shared time axis.
std::string plot_modes(const std::vector<Signal>& modes, const std::string& title);

/// Instantaneous frequency of every mode over time; stroke opacity
/// follows instantaneous amplitude, so low-energy stretches fade out.
std::string plot_spectrum(const HilbertSpectrum& spectrum, const std::string& title);

/// Record plus the carrier mode's envelope with the picked echo instant
/// marked by a vertical rule.
std::string plot_bolt(const Signal& record, const Signal& carrier_mode, double echo_time_s,
                      const std::string& title);

}  // namespace mfvmd
