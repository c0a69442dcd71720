#pragma once

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// Sample Pearson correlation coefficient in [-1, 1].
/// Throws Error("length-mismatch") on unequal lengths and
/// Error("constant-signal") when either argument has zero variance
/// (the coefficient is undefined there).
double pearson_correlation(const Signal& a, const Signal& b);

/// Signal-to-noise ratio in decibels under the additive-noise convention:
/// 10*log10(power(clean) / power(noisy - clean)).
/// Returns +infinity when noisy == clean (zero noise power).
/// Throws Error("length-mismatch") on unequal lengths.
double snr_db(const Signal& clean, const Signal& noisy);

}  // namespace mfvmd
