#include "mfvmd/signal.hpp"

#include <cmath>

#include "mfvmd/error.hpp"

namespace mfvmd {

Signal::Signal(std::vector<double> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
    if (samples_.size() < 2)
        throw Error("bad-signal", "signal needs at least 2 samples, got " + std::to_string(samples_.size()));
    if (!(dt_ > 0.0) || !std::isfinite(dt_))
        throw Error("bad-signal", "sample interval must be positive and finite");
    if (!std::isfinite(t0_))
        throw Error("bad-signal", "start time must be finite");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw Error("bad-signal", "non-finite sample value");
}

double Signal::energy() const noexcept {
    double e = 0.0;
    for (double v : samples_) e += v * v;
    return e;
}

double Signal::power() const noexcept {
    return energy() / static_cast<double>(samples_.size());
}

ComplexSignal::ComplexSignal(std::vector<std::complex<double>> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
    if (samples_.empty())
        throw Error("bad-signal", "complex signal must be non-empty");
    if (!(dt_ > 0.0) || !std::isfinite(dt_))
        throw Error("bad-signal", "sample interval must be positive and finite");
    for (const auto& v : samples_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("bad-signal", "non-finite sample value");
}

Signal ComplexSignal::real_part() const {
    std::vector<double> re(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) re[i] = samples_[i].real();
    return Signal(std::move(re), dt_, t0_);
}

}  // namespace mfvmd
