#pragma once

namespace qsearch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qsearch
