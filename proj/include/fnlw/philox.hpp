#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
// pure function of (key, counter), so any mode of any realization can be
// regenerated independently of every other.

#include <array>
#include <cstdint>

namespace fnlw {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Uniform on (0, 1] from the top 53 bits.
double uniform_open_closed(std::uint64_t bits);
// Uniform on [0, 1) from the top 53 bits.
double uniform_closed_open(std::uint64_t bits);

}  // namespace fnlw
