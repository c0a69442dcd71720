#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfvmd/signal.hpp"

namespace mfvmd {

enum class OmegaInit {
    kUniform,  // evenly spaced over (0, Nyquist/2]
    kZero,     // all centers start at 0
    kRandom,   // sorted uniform draws over (0, Nyquist/2], seeded
};

struct VMDConfig {
    std::size_t mode_count = 2;        // K
    double alpha = 2000.0;             // bandwidth penalty weight
    double tau = 0.1;                  // dual-ascent step
    double tolerance = 1e-7;           // relative convergence threshold
    std::size_t max_iterations = 500;
    OmegaInit init = OmegaInit::kUniform;
    std::optional<std::uint64_t> seed; // required for random init

    /// Throws Error("bad-config") on out-of-range fields or a random
    /// init without a seed.
    void validate() const;
};

/// One extracted narrowband component.
struct Mode {
    Signal u;
    double omega_hz = 0.0;  // center frequency, in [0, Nyquist]
};

struct VMDDiagnostics {
    /// Largest imaginary magnitude seen when transforming mode spectra
    /// back to the time domain (before taking real parts).
    double max_imag_leakage = 0.0;
    /// Set when two converged center frequencies collide within one
    /// frequency-grid cell: more modes were requested than the signal's
    /// bandwidth supports.
    bool duplicate_omegas = false;
    /// Center-frequency trajectory (Hz), one entry per iteration.
    std::vector<std::vector<double>> omega_history;
};

struct VMDResult {
    Signal input;
    std::vector<Mode> modes;  // sorted by ascending omega_hz
    Signal residual;          // input - sum of modes
    std::size_t iterations = 0;
    bool converged = false;
    double final_change = 0.0;  // last relative update norm
    VMDDiagnostics diagnostics;
};

/// Decomposes a signal into `mode_count` narrowband modes by the
/// alternate-direction multiplier iteration on the augmented-Lagrangian
/// form of the variational problem: per sweep, each mode spectrum gets a
/// Wiener update around its center frequency, each center moves to its
/// spectral centroid, and the multiplier performs dual ascent on the
/// reconstruction gap. The input is mirror-extended by half its length
/// on each side and modes are truncated back to the original support.
/// Requires s.size() >= 2 * mode_count.
VMDResult vmd_decompose(const Signal& s, const VMDConfig& cfg);

/// Sum of modes plus residual; equals the decomposed input by
/// construction (the residual is defined as that difference).
Signal reconstruct(const VMDResult& result);

/// ---- Iteration sub-steps (the solver is built from these; each is
/// ---- independently testable). Spectra are positive-half spectra on a
/// ---- normalized frequency grid in cycles/sample, [0, 0.5].

/// Wiener update of one mode spectrum:
///   (f_hat - sum_others + lambda_hat/2) / (1 + 2*alpha*(freq - omega_k)^2).
/// The denominator is always >= 1, so no bin is amplified beyond the
/// numerator.
std::vector<std::complex<double>> wiener_mode_update(
    const std::vector<std::complex<double>>& f_hat,
    const std::vector<std::complex<double>>& sum_other_modes,
    const std::vector<std::complex<double>>& lambda_hat,
    const std::vector<double>& freq_grid, double omega_k, double alpha);

/// Power-weighted spectral centroid over the non-negative half-spectrum;
/// returns `previous_omega` for a zero-power spectrum.
double spectral_centroid(const std::vector<std::complex<double>>& u_hat,
                         const std::vector<double>& freq_grid, double previous_omega);

/// Dual ascent on the reconstruction gap:
///   lambda_hat + tau * (f_hat - sum_modes).
std::vector<std::complex<double>> dual_ascent(
    const std::vector<std::complex<double>>& lambda_hat,
    const std::vector<std::complex<double>>& f_hat,
    const std::vector<std::complex<double>>& sum_modes, double tau);

}  // namespace mfvmd
