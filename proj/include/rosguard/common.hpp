#ifndef ROSGUARD_COMMON_HPP
#define ROSGUARD_COMMON_HPP

#include <cstdint>
#include <limits>

namespace rosguard {

/// Simulated time and durations, in integer microseconds.
using TimeUs = std::int64_t;

/// Byte quantities. Converted to MB (2^20 bytes) only for presentation.
using Bytes = std::int64_t;

using CoreId = int;

__extension__ typedef __int128 Int128;

inline constexpr Bytes kBytesPerMb = Bytes{1} << 20;
inline constexpr std::int64_t kUsPerSecond = 1'000'000;

/// Sentinel duration for callbacks that never finish on their own (THR idle loop).
inline constexpr TimeUs kForever = std::numeric_limits<TimeUs>::max() / 4;

} // namespace rosguard

#endif // ROSGUARD_COMMON_HPP
