#pragma once

namespace medians {

inline constexpr const char* kToolVersion = "medians 1.0.0";

} // namespace medians
