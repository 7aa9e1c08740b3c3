#pragma once

#include <cstdint>

namespace said {

// Simulation time in integer microseconds. The event clock never touches
// floating point so traces are bit-identical across platforms.
using TimeUs = std::int64_t;

constexpr TimeUs kUsPerSec = 1'000'000;

constexpr TimeUs seconds_to_us(double s) {
  return static_cast<TimeUs>(s * static_cast<double>(kUsPerSec) + 0.5);
}

constexpr double us_to_seconds(TimeUs t) {
  return static_cast<double>(t) / static_cast<double>(kUsPerSec);
}

// Transmission time of `bits` at `bits_per_sec`, rounded up to a whole
// microsecond. Zero-size control packets are bandwidth-free.
constexpr TimeUs service_time_us(std::int64_t bits, std::int64_t bits_per_sec) {
  if (bits <= 0) return 0;
  return (bits * kUsPerSec + bits_per_sec - 1) / bits_per_sec;
}

}  // namespace said
