#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "radixion/error.hpp"

namespace radixion {

/// Size caps for the exhaustive computations. Exceeding one raises
/// resource_error before any work is done.
struct Limits {
  std::uint64_t enumeration_cap = std::uint64_t{1} << 26;  // |N_lambda|
  std::uint64_t fns_candidate_cap = 10'000'000;            // lattice points in the cycle search box
  std::uint64_t carry_state_cap = 1'000'000;               // |B_st|
  std::uint64_t census_pair_cap = std::uint64_t{1} << 30;  // |N_mu| * |N_{nu-rho}|
  std::uint64_t tile_point_cap = std::uint64_t{1} << 24;   // Q^depth

  /// Defaults, with RADIXION_CAP (an element count) overriding the
  /// enumeration and tile caps when set.
  static Limits from_environment() {
    Limits l;
    if (const char* env = std::getenv("RADIXION_CAP"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') throw parse_error(std::string("RADIXION_CAP is not an integer: ") + env);
      l.enumeration_cap = v;
      l.tile_point_cap = v;
    }
    return l;
  }
};

/// base^exponent, or max() when it overflows 64 bits.
inline std::uint64_t saturating_power(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

inline void require_within_cap(std::uint64_t count, std::uint64_t cap, const std::string& what) {
  if (count > cap)
    throw resource_error(what + " needs " + (count == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64") : std::to_string(count)) +
                         " evaluations, cap is " + std::to_string(cap));
}

}  // namespace radixion
