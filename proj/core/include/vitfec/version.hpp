#pragma once

namespace vitfec {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace vitfec
