#pragma once

namespace qvord {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qvord
