// version.hpp — library version constant
#pragma once

namespace dynaquant {

inline constexpr const char* kVersion = "0.1.0";

} // namespace dynaquant
