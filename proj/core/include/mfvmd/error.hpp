#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mfvmd {

/// Contract violation carrying a short stable code ("length-mismatch",
/// "csv-nonfinite", ...) that the CLI maps onto its diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace mfvmd
