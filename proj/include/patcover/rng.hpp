#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace patcover {

/// Derives an independent child seed for a named stream (splitmix64 finalizer over seed ^ hash(name)).
std::uint64_t child_seed(std::uint64_t seed, std::string_view stream);

inline std::mt19937_64 make_rng(std::uint64_t seed, std::string_view stream) {
  return std::mt19937_64(child_seed(seed, stream));
}

}  // namespace patcover
