#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldiv/divisibility.hpp"

namespace lattdiv {

/// Structure the hint-driven bounds need. Every field is optional; a bound
/// whose hint is missing is simply not reported.
struct BoundHints {
  /// H = H_0 <= H_1 <= ... <= H_n = G.
  std::vector<PermGroup> chain;
  /// A normal subgroup N of G. When N <= H the quotient pair is also reported.
  std::optional<PermGroup> normal;
  /// Subgroups H <= H_i <= G whose intersection is H.
  std::vector<PermGroup> composite;
  /// (G^, H^) with G <= G^ and H = H^ meet G.
  std::optional<GroupPair> parent;
  /// (A_i, B_i) with B_i <= A_i, G the meet of the A_i and H the meet of the B_i.
  std::vector<GroupPair> factors;
  /// Normal complement of H for the semidirect bound; searched for when absent.
  std::optional<PermGroup> complement;
};

/// Upper bounds on delta ("delta.*") and Delta ("big_delta.*") from the
/// structure results. Entries whose hypotheses fail carry no value and name
/// the failed hypothesis.
std::map<std::string, BoundEntry> theorem_bounds(const GroupPair& pair, std::uint64_t ell,
                                                 const BoundHints& hints,
                                                 const DivisibilityOptions& opts = {});

/// Number of proper containments in H S_0 <= ... <= H S_n for a central
/// series S_i of the normal Sylow ell-subgroup, minimized over the upper and
/// lower central series. Empty when the Sylow subgroup is not normal.
std::optional<std::uint64_t> sylow_chain_bound(const GroupPair& pair, std::uint64_t ell);

/// Compares exact values against bounds; one message per violation.
std::vector<std::string> check_bounds(const std::map<std::string, BoundEntry>& bounds,
                                      const ExactValues& exact);

}  // namespace lattdiv
