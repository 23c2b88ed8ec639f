#pragma once

#include <ostream>

#include "atem/precision_real.hpp"

namespace atem {

// Readable gtest failure messages.
inline void PrintTo(const Real& value, std::ostream* os) { *os << value.to_string(25); }

}  // namespace atem
