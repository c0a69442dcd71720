#pragma once

#include <filesystem>

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// Signal CSV format: first line "# dt=<seconds> t0=<seconds>", then one
/// sample value per line in decimal floating point. Written with 17
/// significant digits so a write/read round trip is bit-exact.

/// Writes atomically (temp file + rename in the target directory).
/// Throws Error("io", ...) on filesystem failures.
void write_signal_csv(const Signal& s, const std::filesystem::path& path);

/// Throws Error("io-missing"), Error("csv-malformed") or
/// Error("csv-nonfinite") on bad input.
Signal read_signal_csv(const std::filesystem::path& path);

}  // namespace mfvmd
