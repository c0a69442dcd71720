#include "mfvmd/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "mfvmd/error.hpp"

namespace mfvmd {
namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Buffers come from fftw_malloc so the planner always sees the same
// alignment and picks the same codelets run to run.
struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n) {
        data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!data) throw Error("fft", "fftw_malloc failed");
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) throw Error("fft", "empty input");

    FftwBuffer in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = x[i].real();
        in.data[i][1] = x[i].imag();
    }

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw Error("fft", "fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<std::complex<double>> result(n);
    const double scale = (sign == FFTW_BACKWARD) ? 1.0 / static_cast<double>(n) : 1.0;
    for (std::size_t i = 0; i < n; ++i)
        result[i] = std::complex<double>(out.data[i][0] * scale, out.data[i][1] * scale);
    return result;
}

}  // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x) {
    return transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x) {
    return transform(x, FFTW_BACKWARD);
}

std::vector<std::complex<double>> fft_real(std::span<const double> x) {
    std::vector<std::complex<double>> cx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) cx[i] = std::complex<double>(x[i], 0.0);
    return fft(cx);
}

}  // namespace mfvmd
