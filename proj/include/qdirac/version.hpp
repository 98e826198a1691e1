#pragma once

namespace qdirac {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qdirac
