#include "mfvmd/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mfvmd/error.hpp"
#include "mfvmd/fft.hpp"

namespace mfvmd {

void VMDConfig::validate() const {
    if (mode_count < 1) throw Error("bad-config", "mode count must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("bad-config", "alpha must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error("bad-config", "tau must be >= 0");
    if (!(tolerance > 0.0)) throw Error("bad-config", "tolerance must be positive");
    if (max_iterations < 1) throw Error("bad-config", "max iterations must be >= 1");
    if (init == OmegaInit::kRandom && !seed.has_value())
        throw Error("bad-config", "random center-frequency init requires an explicit seed");
}

std::vector<std::complex<double>> wiener_mode_update(
    const std::vector<std::complex<double>>& f_hat,
    const std::vector<std::complex<double>>& sum_other_modes,
    const std::vector<std::complex<double>>& lambda_hat,
    const std::vector<double>& freq_grid, double omega_k, double alpha) {
    const std::size_t n = f_hat.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double detune = freq_grid[i] - omega_k;
        const double denom = 1.0 + 2.0 * alpha * detune * detune;
        out[i] = (f_hat[i] - sum_other_modes[i] + 0.5 * lambda_hat[i]) / denom;
    }
    return out;
}

double spectral_centroid(const std::vector<std::complex<double>>& u_hat,
                         const std::vector<double>& freq_grid, double previous_omega) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u_hat.size(); ++i) {
        const double p = std::norm(u_hat[i]);
        num += freq_grid[i] * p;
        den += p;
    }
    if (den == 0.0) return previous_omega;
    return num / den;
}

std::vector<std::complex<double>> dual_ascent(
    const std::vector<std::complex<double>>& lambda_hat,
    const std::vector<std::complex<double>>& f_hat,
    const std::vector<std::complex<double>>& sum_modes, double tau) {
    std::vector<std::complex<double>> out(lambda_hat.size());
    for (std::size_t i = 0; i < lambda_hat.size(); ++i)
        out[i] = lambda_hat[i] + tau * (f_hat[i] - sum_modes[i]);
    return out;
}

namespace {

// Mirror extension: first ⌊N/2⌋ samples reversed | signal | last ⌈N/2⌉
// samples reversed, for an even total of 2N. Suppresses edge
// discontinuities in the spectra.
std::vector<double> mirror_extend(const std::vector<double>& s) {
    const std::size_t n = s.size();
    const std::size_t left = n / 2;
    std::vector<double> ext;
    ext.reserve(2 * n);
    for (std::size_t i = left; i-- > 0;) ext.push_back(s[i]);
    ext.insert(ext.end(), s.begin(), s.end());
    for (std::size_t i = n; i-- > left;) ext.push_back(s[i]);
    return ext;
}

std::vector<double> initial_omegas(const VMDConfig& cfg) {
    const std::size_t k = cfg.mode_count;
    std::vector<double> omegas(k, 0.0);
    switch (cfg.init) {
        case OmegaInit::kZero:
            break;
        case OmegaInit::kUniform:
            // Evenly spaced over (0, 0.25] in cycles/sample (half of Nyquist).
            for (std::size_t i = 0; i < k; ++i)
                omegas[i] = 0.25 * static_cast<double>(i + 1) / static_cast<double>(k);
            break;
        case OmegaInit::kRandom: {
            std::mt19937_64 rng(*cfg.seed);
            std::uniform_real_distribution<double> dist(0.0, 0.25);
            for (std::size_t i = 0; i < k; ++i) omegas[i] = dist(rng);
            std::sort(omegas.begin(), omegas.end());
            break;
        }
    }
    return omegas;
}

}  // namespace

VMDResult vmd_decompose(const Signal& s, const VMDConfig& cfg) {
    cfg.validate();
    const std::size_t n = s.size();
    const std::size_t k_modes = cfg.mode_count;
    if (n < 2 * k_modes)
        throw Error("bad-signal", "signal too short for " + std::to_string(k_modes) + " modes");

    const std::vector<double> extended = mirror_extend(s.samples());
    const std::size_t t_len = extended.size();
    const std::size_t half = t_len / 2;  // index of Nyquist bin (t_len is even)
    const std::size_t trunc_offset = n / 2;

    // Positive-half spectrum of the extended input, bins 0..half at
    // frequencies i / t_len cycles/sample.
    const auto full_spectrum = fft_real(extended);
    std::vector<std::complex<double>> f_hat(half + 1);
    std::vector<double> freq(half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        f_hat[i] = full_spectrum[i];
        freq[i] = static_cast<double>(i) / static_cast<double>(t_len);
    }
    const double grid_step = 1.0 / static_cast<double>(t_len);

    std::vector<double> omegas = initial_omegas(cfg);
    const std::vector<double> init_omegas = omegas;
    std::vector<std::vector<std::complex<double>>> u_hat(
        k_modes, std::vector<std::complex<double>>(half + 1, {0.0, 0.0}));
    std::vector<std::complex<double>> lambda_hat(half + 1, {0.0, 0.0});
    std::vector<std::complex<double>> sum_modes(half + 1, {0.0, 0.0});

    VMDResult result{.input = s, .modes = {}, .residual = s, .iterations = 0,
                     .converged = false, .final_change = 0.0, .diagnostics = {}};

    const double nyquist_hz = s.nyquist();
    const double to_hz = 1.0 / s.dt();

    std::size_t iter = 0;
    double change = 0.0;
    std::vector<std::complex<double>> sum_others(half + 1);
    for (; iter < cfg.max_iterations; ++iter) {
        change = 0.0;
        for (std::size_t k = 0; k < k_modes; ++k) {
            for (std::size_t i = 0; i <= half; ++i) sum_others[i] = sum_modes[i] - u_hat[k][i];
            auto updated = wiener_mode_update(f_hat, sum_others, lambda_hat, freq, omegas[k], cfg.alpha);
            omegas[k] = spectral_centroid(updated, freq, omegas[k]);

            double diff = 0.0, prev_norm = 0.0;
            for (std::size_t i = 0; i <= half; ++i) {
                diff += std::norm(updated[i] - u_hat[k][i]);
                prev_norm += std::norm(u_hat[k][i]);
                sum_modes[i] = sum_others[i] + updated[i];
            }
            change += (prev_norm > 0.0) ? diff / prev_norm : (diff > 0.0 ? 1.0 : 0.0);
            u_hat[k] = std::move(updated);
        }
        if (cfg.tau > 0.0) lambda_hat = dual_ascent(lambda_hat, f_hat, sum_modes, cfg.tau);

        std::vector<double> omegas_hz(k_modes);
        for (std::size_t k = 0; k < k_modes; ++k) omegas_hz[k] = omegas[k] * to_hz;
        result.diagnostics.omega_history.push_back(std::move(omegas_hz));

        if (change < cfg.tolerance) {
            ++iter;
            result.converged = true;
            break;
        }
    }
    result.iterations = iter;
    result.final_change = change;

    // Back to time domain: rebuild the full spectrum by Hermitian
    // symmetry, invert, truncate to the original support.
    std::vector<Mode> modes;
    modes.reserve(k_modes);
    double max_imag = 0.0;
    for (std::size_t k = 0; k < k_modes; ++k) {
        std::vector<std::complex<double>> full(t_len, {0.0, 0.0});
        full[0] = std::complex<double>(u_hat[k][0].real(), 0.0);
        full[half] = std::complex<double>(u_hat[k][half].real(), 0.0);
        for (std::size_t i = 1; i < half; ++i) {
            full[i] = u_hat[k][i];
            full[t_len - i] = std::conj(u_hat[k][i]);
        }
        const auto u_time = ifft(full);
        std::vector<double> truncated(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = u_time[trunc_offset + i];
            truncated[i] = v.real();
            max_imag = std::max(max_imag, std::abs(v.imag()));
        }
        const double omega_clamped = std::clamp(omegas[k] * to_hz, 0.0, nyquist_hz);
        modes.push_back(Mode{Signal(std::move(truncated), s.dt(), s.t0()), omega_clamped});
    }
    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.omega_hz < b.omega_hz; });

    // Degenerate input: keep the documented init centers.
    if (s.energy() == 0.0) {
        for (std::size_t k = 0; k < k_modes; ++k)
            modes[k].omega_hz = std::clamp(init_omegas[k] * to_hz, 0.0, nyquist_hz);
        result.converged = true;
    }

    result.diagnostics.max_imag_leakage = max_imag;
    for (std::size_t k = 1; k < k_modes; ++k)
        if (std::abs(modes[k].omega_hz - modes[k - 1].omega_hz) < grid_step * to_hz)
            result.diagnostics.duplicate_omegas = true;

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const Mode& m : modes) sum += m.u[i];
        residual[i] = s[i] - sum;
    }
    result.modes = std::move(modes);
    result.residual = Signal(std::move(residual), s.dt(), s.t0());
    return result;
}

Signal reconstruct(const VMDResult& result) {
    const std::size_t n = result.input.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const Mode& m : result.modes) sum += m.u[i];
        out[i] = sum + result.residual[i];
    }
    return result.input.with_samples(std::move(out));
}

}  // namespace mfvmd
