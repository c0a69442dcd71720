#pragma once

namespace mfvmd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mfvmd
