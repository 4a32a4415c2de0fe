#pragma once

namespace rdisc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdisc
