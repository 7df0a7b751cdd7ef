/* version.hpp -- toolkit version, echoed into every emitted run record. */
#pragma once

namespace pairpow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pairpow
