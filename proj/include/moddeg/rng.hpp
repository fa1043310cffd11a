#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace moddeg {

using Rng = std::mt19937_64;

// Seed for a sub-stream identified by `path` under `base`. std::seed_seq and
// mt19937_64 are fully specified, so the value is the same on every platform.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32)};
  for (auto step : path) {
    words.push_back(static_cast<std::uint32_t>(step));
    words.push_back(static_cast<std::uint32_t>(step >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace moddeg
