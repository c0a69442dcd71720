#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mfvmd {

/// Uniformly sampled real-valued series. Immutable after construction;
/// every operation in this library returns a new Signal.
class Signal {
public:
    /// Validates: at least 2 samples, dt > 0 and finite, all samples finite.
    /// Throws Error("bad-signal", ...) otherwise.
    Signal(std::vector<double> samples, double dt, double t0 = 0.0);

    const std::vector<double>& samples() const noexcept { return samples_; }
    double dt() const noexcept { return dt_; }
    double t0() const noexcept { return t0_; }

    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }
    double time_at(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) * dt_; }
    double duration() const noexcept { return static_cast<double>(samples_.size()) * dt_; }
    double sample_rate() const noexcept { return 1.0 / dt_; }
    double nyquist() const noexcept { return 0.5 / dt_; }

    /// Sum of squared samples (time-domain energy).
    double energy() const noexcept;
    /// Mean squared sample value.
    double power() const noexcept;

    /// New signal with the same grid and the given samples.
    Signal with_samples(std::vector<double> samples) const { return Signal(std::move(samples), dt_, t0_); }

private:
    std::vector<double> samples_;
    double dt_;
    double t0_;
};

/// Complex-valued series on the same uniform grid (holds analytic signals).
class ComplexSignal {
public:
    /// Validates finite values. Throws Error("bad-signal", ...) otherwise.
    ComplexSignal(std::vector<std::complex<double>> samples, double dt, double t0 = 0.0);

    const std::vector<std::complex<double>>& samples() const noexcept { return samples_; }
    double dt() const noexcept { return dt_; }
    double t0() const noexcept { return t0_; }

    std::size_t size() const noexcept { return samples_.size(); }
    const std::complex<double>& operator[](std::size_t i) const noexcept { return samples_[i]; }
    double time_at(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) * dt_; }

    /// Real part as a Signal on the same grid.
    Signal real_part() const;

private:
    std::vector<std::complex<double>> samples_;
    double dt_;
    double t0_;
};

}  // namespace mfvmd
