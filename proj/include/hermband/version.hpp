#pragma once

namespace hermband {

inline constexpr const char* version_string = "0.1.0";

}  // namespace hermband
