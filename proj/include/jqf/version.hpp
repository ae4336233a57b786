#pragma once

namespace jqf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jqf
