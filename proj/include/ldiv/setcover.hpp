#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ldiv/bitset.hpp"

namespace lattdiv {

/// Exact minimum-weight set cover over a small universe.
struct SetCoverResult {
  bool feasible = false;
  std::uint64_t cost = 0;
  /// Indices into the input candidate list, ascending.
  std::vector<std::size_t> chosen;
  /// First element no candidate covers, when infeasible.
  std::optional<std::size_t> uncovered;
  std::uint64_t nodes = 0;
};

/// `masks[i]` is the set of universe elements candidate i covers, `weights[i]`
/// its positive integer cost. Identical masks collapse to the cheapest (then
/// first) candidate and dominated candidates are dropped before a greedy
/// incumbent seeds a depth-first branch and bound. Among optimal covers the
/// one reached first in the deterministic search order is returned.
SetCoverResult solve_set_cover(std::size_t universe, const std::vector<Bitset>& masks,
                               const std::vector<std::uint64_t>& weights,
                               std::uint64_t node_limit = 50'000'000);

/// Exhaustive reference for tiny instances (at most 20 candidates).
SetCoverResult brute_force_set_cover(std::size_t universe, const std::vector<Bitset>& masks,
                                     const std::vector<std::uint64_t>& weights);

}  // namespace lattdiv
