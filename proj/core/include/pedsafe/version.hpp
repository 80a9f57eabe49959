#pragma once

#include <string_view>

namespace pedsafe {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace pedsafe
