#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfvmd/morphology.hpp"
#include "mfvmd/signal.hpp"
#include "mfvmd/vmd.hpp"

namespace mfvmd {

/// Width-scan bounds for the data-driven structuring-element pick.
struct SeAutoSelect {
    std::size_t min_width = 3;
    std::size_t max_width = 15;
    double threshold = 0.95;
};

/// Morphological pre-filter + decomposition settings. A fixed element
/// wins over the scan when both are present.
struct MfVmdConfig {
    std::optional<StructuringElement> se;
    SeAutoSelect se_auto;
    VMDConfig vmd;
};

struct MfVmdResult {
    VMDResult vmd;
    Signal filtered;                 // combined-filter output fed to the solver
    std::size_t se_width_used = 0;
    bool se_met_threshold = true;    // false when the width scan fell back
};

/// Combined morphological filter first, then the variational
/// decomposition of the filtered signal.
MfVmdResult mf_vmd(const Signal& s, const MfVmdConfig& cfg);

struct EchoDetection {
    std::size_t mode_index = 0;
    double echo_time_s = 0.0;
    double confidence = 0.0;  // peak-to-median envelope ratio after the blank
};

/// Scans every mode's instantaneous-amplitude envelope after
/// `blank_time_s` (which masks the direct wave) and returns the mode and
/// time with the greatest peak-to-median ratio. Throws Error("no-echo")
/// when no peak exceeds `confidence_threshold` times the median.
/// Envelopes are lightly smoothed (moving average over about 1% of the
/// record) and the median is floored at 2% of the mode's full-record
/// envelope peak: a genuine echo must stand against the direct wave, not
/// merely against a silent tail. The ratio is invariant under positive
/// scaling of the record.
EchoDetection detect_echo(const VMDResult& result, double blank_time_s,
                          double confidence_threshold = 3.0);

/// Two-way travel: length = velocity * echo_time / 2. Both inputs must
/// be positive.
double estimate_length(double echo_time_s, double velocity_mps);

struct BoltAnalysisConfig {
    MfVmdConfig mfvmd;
    double velocity_mps = 6000.0;
    double blank_time_s = 0.3e-3;
    double confidence_threshold = 3.0;
};

struct BoltDiagnostics {
    std::size_t se_width_used = 0;
    bool se_met_threshold = true;
    std::size_t vmd_iterations = 0;
    bool vmd_converged = false;
    bool duplicate_omegas = false;
    std::vector<double> mode_omegas_hz;
};

struct BoltReport {
    double echo_time_s = 0.0;
    double estimated_length_m = 0.0;
    std::size_t carrier_mode_index = 0;
    double confidence = 0.0;
    BoltDiagnostics diagnostics;
};

/// Echo pick + length estimate over an existing decomposition.
BoltReport analyze_bolt(const MfVmdResult& decomposition, const BoltAnalysisConfig& cfg);

/// Full pipeline: filter, decompose, pick the echo, convert to length.
BoltReport analyze_bolt(const Signal& s, const BoltAnalysisConfig& cfg);

}  // namespace mfvmd
