// Acceptance harness: one line per criterion, process exit code equals the
// number of failed criteria. Tolerances are frozen here on purpose; loosen
// them only with a written justification in the project notes.

#include <mfvmd/bolt.hpp>
#include <mfvmd/error.hpp>
#include <mfvmd/fft.hpp>
#include <mfvmd/hilbert.hpp>
#include <mfvmd/morphology.hpp>
#include <mfvmd/signal.hpp>
#include <mfvmd/stats.hpp>
#include <mfvmd/synthesis.hpp>
#include <mfvmd/vmd.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace mfvmd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Signal tone(double freq_hz, double fs_hz, std::size_t n) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = std::sin(kTwoPi * freq_hz * static_cast<double>(i) / fs_hz);
    return Signal(std::move(s), 1.0 / fs_hz);
}

double safe_corr(const Signal& a, const Signal& b) {
    try {
        return pearson_correlation(a, b);
    } catch (const Error&) {
        return -2.0;
    }
}

/// Highest correlation of any mode against the reference, plus who scored it.
double best_corr(const std::vector<Mode>& modes, const Signal& ref, std::size_t* who = nullptr) {
    double best = -2.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double c = safe_corr(modes[k].u, ref);
        if (c > best) {
            best = c;
            if (who) *who = k;
        }
    }
    return best;
}

bool both_references_recovered(const std::vector<Mode>& modes, const ToneReferences& refs) {
    std::size_t il = 0, ih = 0;
    const double cl = best_corr(modes, refs.low, &il);
    const double ch = best_corr(modes, refs.high, &ih);
    return cl >= 0.8 && ch >= 0.8 && il != ih;
}

std::vector<Signal> mode_signals(const std::vector<Mode>& modes) {
    std::vector<Signal> us;
    us.reserve(modes.size());
    for (const auto& m : modes) us.push_back(m.u);
    return us;
}

double ridge_segment_mean(const std::vector<double>& ridge, double dt, double t0, double lo,
                          double hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < ridge.size(); ++i) {
        const double t = t0 + static_cast<double>(i) * dt;
        if (t < lo || t > hi || std::isnan(ridge[i])) continue;
        sum += ridge[i];
        ++count;
    }
    return count ? sum / static_cast<double>(count) : std::nan("");
}

// ---- criterion 1: clean two-tone decomposition ----

Outcome clean_decomposition() {
    const auto start = std::chrono::steady_clock::now();

    const Signal s = gen_piecewise(two_tone_switch_spec());
    const VMDResult r = vmd_decompose(s, VMDConfig{});

    const double w1 = r.modes.at(0).omega_hz;
    const double w2 = r.modes.at(1).omega_hz;
    const bool omegas_ok = std::abs(w1 - 10e3) <= 0.02 * 10e3 && std::abs(w2 - 20e3) <= 0.02 * 20e3;

    const auto ridge = dominant_ridge(hilbert_spectrum(mode_signals(r.modes)));
    const auto steps = detect_frequency_steps(ridge, s.dt(), s.t0(), 10e3, 20e3);
    bool steps_ok = steps.size() == 2;
    if (steps_ok) {
        steps_ok = std::abs(steps[0] - 0.8e-3) <= 10.0 * s.dt() &&
                   std::abs(steps[1] - 1.2e-3) <= 10.0 * s.dt();
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "omegas %.1f/%.1f Hz (|err| <= 2%%: %s), %zu transition(s)%s, %.2f s",
                  w1, w2, omegas_ok ? "yes" : "NO", steps.size(),
                  steps_ok ? " on time" : " OFF", wall);
    return {omegas_ok && steps_ok && wall <= 5.0, buf};
}

// ---- criteria 2 and 3: noisy degradation and MF-VMD recovery ----

struct NoisyCounts {
    int plain_degraded = 0;
    int mf_recovered = 0;
    int ridges_ok = 0;
};

NoisyCounts run_noisy_seeds() {
    const Signal clean = gen_piecewise(two_tone_switch_spec());
    const ToneReferences refs = two_tone_references();

    VMDConfig k5;
    k5.mode_count = 5;

    NoisyCounts counts;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Signal noisy = add_noise(clean, 5.0, seed);

        const VMDResult plain = vmd_decompose(noisy, k5);
        if (!both_references_recovered(plain.modes, refs)) ++counts.plain_degraded;

        MfVmdConfig mcfg;
        mcfg.vmd = k5;
        const MfVmdResult mf = mf_vmd(noisy, mcfg);
        if (both_references_recovered(mf.vmd.modes, refs)) ++counts.mf_recovered;

        const HilbertSpectrum sp = hilbert_spectrum(mode_signals(mf.vmd.modes));
        const auto ridge = dominant_ridge(sp);
        const double lo1 = ridge_segment_mean(ridge, sp.dt, sp.t0, 0.1e-3, 0.7e-3);
        const double hi = ridge_segment_mean(ridge, sp.dt, sp.t0, 0.9e-3, 1.1e-3);
        const double lo2 = ridge_segment_mean(ridge, sp.dt, sp.t0, 1.3e-3, 1.9e-3);
        if (std::abs(lo1 - 10e3) <= 0.05 * 10e3 && std::abs(hi - 20e3) <= 0.05 * 20e3 &&
            std::abs(lo2 - 10e3) <= 0.05 * 10e3)
            ++counts.ridges_ok;
    }
    return counts;
}

Outcome noisy_degradation(const NoisyCounts& counts) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "plain VMD K=5 at 5 dB lost a tone on %d/10 seeds (pass fraction %.1f, need >= 5)",
                  counts.plain_degraded, counts.plain_degraded / 10.0);
    return {counts.plain_degraded >= 5, buf};
}

Outcome mf_recovery(const NoisyCounts& counts) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "MF-VMD recovered both tones on %d/10 seeds (need >= 8); ridges within 5%% on %d/10",
                  counts.mf_recovered, counts.ridges_ok);
    return {counts.mf_recovered >= 8 && counts.ridges_ok >= 8, buf};
}

// ---- criterion 4: bolt length over seeds ----

Outcome bolt_length() {
    BoltEchoSpec spec;
    spec.echo_amplitude = 0.5;
    const Signal record = gen_bolt_echo(spec);
    const auto target_idx = std::llround(spec.echo_time_s() / record.dt());

    BoltAnalysisConfig cfg;
    cfg.mfvmd.vmd.mode_count = 3;

    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        try {
            const Signal noisy = add_noise(record, 5.0, seed);
            const BoltReport rep = analyze_bolt(noisy, cfg);
            const auto idx = std::llround(rep.echo_time_s / record.dt());
            const bool timing = std::llabs(idx - target_idx) <= 5;
            const bool length = std::abs(rep.estimated_length_m - 3.0) <= 0.05 * 3.0;
            if (timing && length) ++hits;
        } catch (const Error&) {
            // a missed echo counts as a failed seed
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "echo at 1.0 ms +/-5 samples and length 3.0 m +/-5%% on %d/20 seeds (need >= 18)",
                  hits);
    return {hits >= 18, buf};
}

// ---- criterion 5: morphology against the brute-force oracle ----

Outcome morphology_oracle() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    int cases = 0, mismatches = 0, invariant_breaks = 0;
    for (int round = 0; round < 1000; ++round) {
        std::uniform_int_distribution<std::size_t> len(2, 64);
        const std::size_t n = len(rng);
        const auto sv = oracle::random_samples(rng, n);
        const Signal s(sv, 1.0);

        std::uniform_int_distribution<std::size_t> wd(1, std::min<std::size_t>(9, n));
        const std::size_t w = wd(rng);
        const bool flat = round % 3 != 0;
        std::vector<double> gv(w, 0.0);
        if (!flat)
            for (double& v : gv) v = uni(rng);
        const StructuringElement g(gv);

        const auto er = erode(s, g).samples();
        const auto di = dilate(s, g).samples();
        const auto op = open(s, g).samples();
        const auto cl = close(s, g).samples();
        ++cases;

        if (er != oracle::erode(sv, gv) || di != oracle::dilate(sv, gv) ||
            op != oracle::open(sv, gv) || cl != oracle::close(sv, gv)) {
            ++mismatches;
            continue;
        }

        bool ok = true;
        if (flat) {
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = er[i] <= op[i] && op[i] <= sv[i] && sv[i] <= cl[i] && cl[i] <= di[i];
        }
        // Duality under this index convention: dilation at the window's
        // trailing edge mirrors erosion of the negated signal.
        std::vector<double> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -sv[i];
        const auto er_neg = erode(Signal(neg, 1.0), g.reflect()).samples();
        for (std::size_t i = 0; i + w <= n && ok; ++i) ok = di[i + w - 1] == -er_neg[i];

        // Idempotence is exact for flat elements. A non-flat element only
        // satisfies it away from the record edges: replicate extension of
        // the intermediate stage no longer matches the unbounded operator
        // there, and the second pass can move edge samples by O(height).
        const auto op2 = open(Signal(op, 1.0), g).samples();
        const auto cl2 = close(Signal(cl, 1.0), g).samples();
        if (flat) {
            ok = ok && op2 == op && cl2 == cl;
        } else {
            const std::size_t margin = 2 * (w - 1);
            for (std::size_t i = margin; i + margin < n && ok; ++i)
                ok = std::abs(op2[i] - op[i]) <= 1e-12 && std::abs(cl2[i] - cl[i]) <= 1e-12;
        }

        if (!ok) ++invariant_breaks;
    }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d cases: %d oracle mismatches, %d invariant breaks (ordering/duality/idempotence)",
                  cases, mismatches, invariant_breaks);
    return {mismatches == 0 && invariant_breaks == 0, buf};
}

// ---- criterion 6: solver properties ----

struct ClosureStats {
    double max_abs = 0.0;
    std::size_t bitwise_mismatches = 0;
    std::size_t samples = 0;
    double scale = 0.0;
};

ClosureStats closure_of(const VMDResult& r) {
    ClosureStats st;
    st.samples = r.input.size();
    for (double v : r.input.samples()) st.scale = std::max(st.scale, std::abs(v));
    for (std::size_t i = 0; i < r.input.size(); ++i) {
        double sum = r.residual[i];
        for (const auto& m : r.modes) sum += m.u[i];
        if (sum != r.input[i]) ++st.bitwise_mismatches;
        st.max_abs = std::max(st.max_abs, std::abs(sum - r.input[i]));
    }
    return st;
}

bool modes_identical(const VMDResult& a, const VMDResult& b) {
    if (a.modes.size() != b.modes.size() || a.iterations != b.iterations) return false;
    for (std::size_t k = 0; k < a.modes.size(); ++k) {
        if (a.modes[k].omega_hz != b.modes[k].omega_hz) return false;
        const auto& ua = a.modes[k].u.samples();
        const auto& ub = b.modes[k].u.samples();
        if (ua.size() != ub.size() ||
            std::memcmp(ua.data(), ub.data(), ua.size() * sizeof(double)) != 0)
            return false;
    }
    const auto& ra = a.residual.samples();
    const auto& rb = b.residual.samples();
    return std::memcmp(ra.data(), rb.data(), ra.size() * sizeof(double)) == 0;
}

Outcome solver_properties() {
    const Signal clean = gen_piecewise(two_tone_switch_spec());
    const Signal noisy = add_noise(clean, 5.0, 4);
    BoltEchoSpec bolt_spec;
    const Signal bolt = gen_bolt_echo(bolt_spec);

    VMDConfig k2;
    VMDConfig k5;
    k5.mode_count = 5;
    VMDConfig k3;
    k3.mode_count = 3;

    // Closure at machine precision. The residual is a rounded difference,
    // so re-adding it can flip the last bit; report how often while
    // holding the absolute error to a few epsilon of the signal scale.
    bool closure_ok = true;
    std::size_t flips = 0, total = 0;
    double worst_rel = 0.0;
    for (const auto& [sig, cfg] :
         {std::pair{clean, k2}, std::pair{noisy, k5}, std::pair{bolt, k3}}) {
        const ClosureStats st = closure_of(vmd_decompose(sig, cfg));
        flips += st.bitwise_mismatches;
        total += st.samples;
        const double limit = 4.0 * std::numeric_limits<double>::epsilon() * st.scale;
        worst_rel = std::max(worst_rel, st.max_abs / st.scale);
        if (st.max_abs > limit) closure_ok = false;
    }

    // Wiener half-power point, exact by construction.
    const std::vector<std::complex<double>> f = {{0.0, 0.0}, {1.0, 0.0}};
    const std::vector<std::complex<double>> zero(2, {0.0, 0.0});
    const auto half = wiener_mode_update(f, zero, zero, {0.0, 0.25}, 0.0, 8.0);
    const bool half_ok = half[1] == std::complex<double>{0.5, 0.0};

    // Scale equivariance: a power of two is exact, three drifts within
    // 0.1 percent of Nyquist.
    VMDConfig k2n = k2;
    const VMDResult base = vmd_decompose(noisy, k2n);
    std::vector<double> x4(noisy.size()), x3(noisy.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        x4[i] = 4.0 * noisy[i];
        x3[i] = 3.0 * noisy[i];
    }
    const VMDResult big4 = vmd_decompose(noisy.with_samples(x4), k2n);
    const VMDResult big3 = vmd_decompose(noisy.with_samples(x3), k2n);

    bool scale_ok = true;
    for (std::size_t k = 0; k < base.modes.size(); ++k) {
        if (big4.modes[k].omega_hz != base.modes[k].omega_hz) scale_ok = false;
        for (std::size_t i = 0; i < noisy.size() && scale_ok; ++i)
            if (big4.modes[k].u[i] != 4.0 * base.modes[k].u[i]) scale_ok = false;

        if (std::abs(big3.modes[k].omega_hz - base.modes[k].omega_hz) > 0.001 * noisy.nyquist())
            scale_ok = false;
        for (std::size_t i = 0; i < noisy.size() && scale_ok; ++i) {
            const double want = 3.0 * base.modes[k].u[i];
            if (std::abs(big3.modes[k].u[i] - want) > 1e-9 * std::max(1.0, std::abs(want)))
                scale_ok = false;
        }
    }

    // Determinism, byte for byte, uniform and seeded-random inits.
    const bool det_uniform = modes_identical(vmd_decompose(noisy, k5), vmd_decompose(noisy, k5));
    VMDConfig krand = k2;
    krand.init = OmegaInit::kRandom;
    krand.seed = 31337;
    const bool det_random = modes_identical(vmd_decompose(noisy, krand), vmd_decompose(noisy, krand));

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "closure max rel %.2e (%zu/%zu last-bit flips), half-power %s, scaling %s, determinism %s",
                  worst_rel, flips, total, half_ok ? "exact" : "OFF",
                  scale_ok ? "ok" : "OFF", det_uniform && det_random ? "bytewise" : "BROKEN");
    return {closure_ok && half_ok && scale_ok && det_uniform && det_random, buf};
}

// ---- criterion 7: hilbert contracts ----

Outcome hilbert_contracts() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    // One-sidedness and real-part reconstruction on tones and noise.
    double worst_neg = 0.0, worst_real = 0.0;
    for (int round = 0; round < 6; ++round) {
        std::vector<double> v(512);
        if (round < 3)
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = std::cos(kTwoPi * (1 + round * 37) * static_cast<double>(i) / 512.0);
        else
            for (double& x : v) x = uni(rng);
        const Signal s(v, 1e-6);
        const ComplexSignal a = analytic_signal(s);

        const auto spec = fft(a.samples());
        double peak = 0.0;
        for (std::size_t k = 0; k <= 256; ++k) peak = std::max(peak, std::abs(spec[k]));
        for (std::size_t k = 257; k < spec.size(); ++k)
            worst_neg = std::max(worst_neg, std::abs(spec[k]) / peak);

        for (std::size_t i = 0; i < s.size(); ++i)
            worst_real = std::max(worst_real, std::abs(a[i].real() - s[i]));
    }

    // Interior instantaneous frequency of pure tones within 1 percent.
    bool tones_ok = true;
    for (double f : {1e4, 5e4, 1.25e5}) {
        const Signal s = tone(f, 1e6, 1000);
        const InstFreqSeries inst = instantaneous_frequency(analytic_signal(s));
        for (std::size_t i = 100; i < 900; ++i)
            if (std::abs(inst.freqs[i] - f) > 0.01 * f) tones_ok = false;
    }

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "one-sided leakage %.1e (<= 1e-12), real-part err %.1e (<= 1e-10), tone IF 1%%: %s",
                  worst_neg, worst_real, tones_ok ? "ok" : "OFF");
    return {worst_neg <= 1e-12 && worst_real <= 1e-10 && tones_ok, buf};
}

// ---- criterion 8: SNR calibration ----

Outcome snr_calibration() {
    double worst = 0.0;
    const Signal base = tone(10e3, 1e6, 1000);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Signal noisy = add_noise(base, 5.0, seed);
        worst = std::max(worst, std::abs(snr_db(base, noisy) - 5.0));
    }
    for (std::size_t n : {2000u, 4096u}) {
        const Signal s = tone(10e3, 1e6, n);
        for (double target : {-3.0, 10.0}) {
            const Signal noisy = add_noise(s, target, 7);
            worst = std::max(worst, std::abs(snr_db(s, noisy) - target));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst SNR error %.2e dB over 104 draws (<= 0.1 dB)", worst);
    return {worst <= 0.1, buf};
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char* label;
        Outcome outcome;
    };

    const NoisyCounts noisy = run_noisy_seeds();
    const std::vector<Row> rows = {
        {1, "clean two-tone decomposition", clean_decomposition()},
        {2, "noisy plain-VMD degradation", noisy_degradation(noisy)},
        {3, "MF-VMD recovery", mf_recovery(noisy)},
        {4, "bolt length estimation", bolt_length()},
        {5, "morphology oracle equivalence", morphology_oracle()},
        {6, "solver properties", solver_properties()},
        {7, "hilbert contracts", hilbert_contracts()},
        {8, "SNR calibration", snr_calibration()},
    };

    int failures = 0;
    for (const auto& row : rows) {
        if (!row.outcome.pass) ++failures;
        std::printf("%s  %d  %-32s %s\n", row.outcome.pass ? "PASS" : "FAIL", row.id, row.label,
                    row.outcome.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", rows.size() - static_cast<std::size_t>(failures),
                rows.size());
    return failures;
}
