#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ldiv/asymptotics.hpp"
#include "ldiv/divisibility.hpp"

namespace lattdiv::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit : int { ok = 0, internal = 1, invalid = 2, cap = 3 };

struct Limits {
  std::size_t element_cap = kDefaultElementCap;
  std::uint64_t work_limit = kDefaultWorkLimit;
  std::uint64_t sieve_max = kDefaultSieveMax;
};

/// "C:n", "D:n", "S:n", "A:n" or a JSON literal
/// {"degree": n, "generators": [[images...] or "(1 2)(3 4)", ...]}.
PermGroup parse_group_spec(std::string_view text, const Limits& limits = {});

/// "pair:dihedral:n", "pair:klein-s5", "pair:klein-s4" or {"G": ..., "H": ...}.
GroupPair parse_pair_spec(std::string_view text, const Limits& limits = {});

/// Runs one request. args excludes the program name. Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lattdiv::cli
