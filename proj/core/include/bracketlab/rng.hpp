#pragma once

#include <cstdint>
#include <random>

namespace bracketlab {

/// Independent purposes get independent streams for the same key.
enum class StreamPurpose : std::uint32_t {
  Preferences = 1,
  Tremble = 2,
  Fuzz = 3,
  Replication = 4,
};

/// Stream for (master seed, purpose, key). Depends only on its inputs, so
/// draws do not depend on which thread or in which order keys are visited.
inline std::mt19937_64 derive_stream(std::uint64_t master_seed, StreamPurpose purpose,
                                     std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(purpose),
                    static_cast<std::uint32_t>(key),
                    static_cast<std::uint32_t>(key >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace bracketlab
