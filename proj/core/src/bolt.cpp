#include "mfvmd/bolt.hpp"

#include <algorithm>
#include <cmath>

#include "mfvmd/error.hpp"
#include "mfvmd/hilbert.hpp"

namespace mfvmd {

MfVmdResult mf_vmd(const Signal& s, const MfVmdConfig& cfg) {
    StructuringElement se = StructuringElement::flat(1);
    bool met = true;
    if (cfg.se.has_value()) {
        se = *cfg.se;
    } else {
        const auto pick = select_se_width(s, cfg.se_auto.min_width, cfg.se_auto.max_width,
                                          cfg.se_auto.threshold);
        se = StructuringElement::flat(pick.width);
        met = pick.met_threshold;
    }
    Signal filtered = mmc_filter(s, se);
    VMDResult vmd = vmd_decompose(filtered, cfg.vmd);
    return MfVmdResult{std::move(vmd), std::move(filtered), se.width(), met};
}

namespace {

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Envelope with the Hilbert edge spike pushed out of frame: the mode is
// mirror-extended by half its length on each side, transformed, and the
// middle section kept. Without this the wrap discontinuity at the record
// boundary rings hard enough to out-peak a real echo.
std::vector<double> detection_envelope(const Signal& s) {
    const std::size_t n = s.size();
    const std::size_t left = n / 2;
    std::vector<double> ext;
    ext.reserve(2 * n);
    for (std::size_t i = left; i-- > 0;) ext.push_back(s[i]);
    ext.insert(ext.end(), s.samples().begin(), s.samples().end());
    for (std::size_t i = n; i-- > left;) ext.push_back(s[i]);

    const ComplexSignal a = analytic_signal(Signal(std::move(ext), s.dt()));
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(a[left + i]);
    return env;
}

// Centered moving average spanning about 1% of the record (odd, >= 3).
// Steadies the peak pick against single-sample noise excursions without
// biasing the peak location.
std::vector<double> smoothed(const std::vector<double>& v) {
    std::size_t w = std::max<std::size_t>(3, v.size() / 100);
    if (w % 2 == 0) ++w;
    const std::size_t h = w / 2;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = (i >= h) ? i - h : 0;
        const std::size_t hi = std::min(i + h, v.size() - 1);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += v[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace

EchoDetection detect_echo(const VMDResult& result, double blank_time_s,
                          double confidence_threshold) {
    if (result.modes.empty()) throw Error("no-echo", "decomposition has no modes");
    const Signal& in = result.input;
    if (!(blank_time_s > 0.0) || !(blank_time_s < in.duration()))
        throw Error("bad-config", "blank time must lie inside the record");

    std::size_t start = in.size();
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in.time_at(i) > blank_time_s) {
            start = i;
            break;
        }
    }
    if (start >= in.size()) throw Error("bad-config", "blank time leaves no samples");

    EchoDetection best;
    bool found = false;
    for (std::size_t k = 0; k < result.modes.size(); ++k) {
        const std::vector<double> env = smoothed(detection_envelope(result.modes[k].u));
        const double global_peak = *std::max_element(env.begin(), env.end());
        std::size_t peak_idx = start;
        for (std::size_t i = start + 1; i < env.size(); ++i)
            if (env[i] > env[peak_idx]) peak_idx = i;

        const double med = median_of({env.begin() + static_cast<std::ptrdiff_t>(start), env.end()});
        // A candidate must reach a few percent of the mode's strongest
        // arrival (the direct wave); the decaying ringing that trails it
        // sits around 1% and would otherwise out-ratio a silent tail.
        const double floor = 0.02 * global_peak;
        const double denom = std::max(med, floor);
        const double ratio = (denom > 0.0) ? env[peak_idx] / denom : 0.0;

        if (!found || ratio > best.confidence) {
            best = EchoDetection{k, in.time_at(peak_idx), ratio};
            found = true;
        }
    }
    if (!(best.confidence > confidence_threshold))
        throw Error("no-echo", "no envelope peak exceeds the confidence threshold after the blank time");
    return best;
}

double estimate_length(double echo_time_s, double velocity_mps) {
    if (!(echo_time_s > 0.0) || !std::isfinite(echo_time_s))
        throw Error("bad-config", "echo time must be positive");
    if (!(velocity_mps > 0.0) || !std::isfinite(velocity_mps))
        throw Error("bad-config", "wave velocity must be positive");
    return velocity_mps * echo_time_s / 2.0;
}

BoltReport analyze_bolt(const MfVmdResult& decomposition, const BoltAnalysisConfig& cfg) {
    const EchoDetection echo =
        detect_echo(decomposition.vmd, cfg.blank_time_s, cfg.confidence_threshold);
    BoltReport report;
    report.echo_time_s = echo.echo_time_s;
    report.estimated_length_m = estimate_length(echo.echo_time_s, cfg.velocity_mps);
    report.carrier_mode_index = echo.mode_index;
    report.confidence = echo.confidence;
    report.diagnostics.se_width_used = decomposition.se_width_used;
    report.diagnostics.se_met_threshold = decomposition.se_met_threshold;
    report.diagnostics.vmd_iterations = decomposition.vmd.iterations;
    report.diagnostics.vmd_converged = decomposition.vmd.converged;
    report.diagnostics.duplicate_omegas = decomposition.vmd.diagnostics.duplicate_omegas;
    for (const Mode& m : decomposition.vmd.modes)
        report.diagnostics.mode_omegas_hz.push_back(m.omega_hz);
    return report;
}

BoltReport analyze_bolt(const Signal& s, const BoltAnalysisConfig& cfg) {
    return analyze_bolt(mf_vmd(s, cfg.mfvmd), cfg);
}

}  // namespace mfvmd
