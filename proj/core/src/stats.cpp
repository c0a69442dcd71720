#include "mfvmd/stats.hpp"

#include <cmath>
#include <limits>

#include "mfvmd/error.hpp"

namespace mfvmd {

double pearson_correlation(const Signal& a, const Signal& b) {
    if (a.size() != b.size())
        throw Error("length-mismatch", "correlation needs equal lengths, got " +
                                           std::to_string(a.size()) + " and " + std::to_string(b.size()));
    const std::size_t n = a.size();

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw Error("constant-signal", "correlation undefined for a zero-variance argument");

    double r = cov / std::sqrt(var_a * var_b);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

double snr_db(const Signal& clean, const Signal& noisy) {
    if (clean.size() != noisy.size())
        throw Error("length-mismatch", "snr needs equal lengths");
    const std::size_t n = clean.size();

    double p_clean = 0.0, p_noise = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p_clean += clean[i] * clean[i];
        const double d = noisy[i] - clean[i];
        p_noise += d * d;
    }
    if (p_noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_clean / p_noise);
}

}  // namespace mfvmd
