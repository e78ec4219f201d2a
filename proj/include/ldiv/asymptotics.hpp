#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace lattdiv {

inline constexpr std::uint64_t kDefaultSieveMax = 100'000'000;

/// count_S also runs the definitional enumeration up to this x and aborts on
/// disagreement.
inline constexpr std::uint64_t kCrossCheckMax = 1'000'000;

/// Bytes a sieve up to `limit` allocates.
std::uint64_t estimated_sieve_bytes(std::uint64_t limit);

/// Counts over 1 <= n <= x, bucketed by omega(n).
struct Profile {
  static constexpr std::size_t kMaxOmega = 16;
  std::array<std::uint64_t, kMaxOmega> squarefree{};
  /// Every prime exponent of n is at least j.
  std::array<std::uint64_t, kMaxOmega> exponents_at_least_j{};
  std::array<std::uint64_t, kMaxOmega> all{};

  bool operator==(const Profile&) const = default;
};

/// Smallest-prime-factor sieve with the census counts built on it. Read-only
/// after construction.
class Census {
 public:
  /// Throws CapExceeded when limit > sieve_max.
  explicit Census(std::uint64_t limit, std::uint64_t sieve_max = kDefaultSieveMax);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }

  Profile profile(std::uint64_t x, std::uint64_t j) const;
  Profile profile_serial(std::uint64_t x, std::uint64_t j) const;

  /// Squarefree n <= x with exactly k prime factors.
  std::uint64_t pi_k(std::uint64_t x, std::uint64_t k) const;

  /// |{+-s^j : omega(s) <= k, |s^j| <= x}|.
  std::uint64_t count_t(std::uint64_t x, std::uint64_t k, std::uint64_t j) const;

  /// |{s^j t : omega(s) = omega(st) <= k, |s^j t| <= x}| through the exponent
  /// characterization: 0 < |n| <= x, omega(n) <= k, every exponent >= j.
  /// Cross-checked against count_s_definition when x <= kCrossCheckMax.
  std::uint64_t count_s(std::uint64_t x, std::uint64_t k, std::uint64_t j) const;

  std::uint64_t omega(std::uint64_t n) const;

 private:
  void check_x(std::uint64_t x) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// Enumerates the pairs (s, t) directly, with trial division. Independent of
/// the sieve.
std::uint64_t count_s_definition(std::uint64_t x, std::uint64_t k, std::uint64_t j);

/// Enumerates s directly, with trial division.
std::uint64_t count_t_definition(std::uint64_t x, std::uint64_t k, std::uint64_t j);

/// floor(x^(1/j)).
std::uint64_t integer_root(std::uint64_t x, std::uint64_t j);

struct CensusRow {
  std::uint64_t x = 0;
  std::uint64_t k = 0;
  std::uint64_t j = 0;
  std::uint64_t pi_k = 0;
  std::uint64_t t_count = 0;
  std::uint64_t s_count = 0;
  double s_ratio = 0;
  double pi_ratio = 0;
};

struct RatioTable {
  std::vector<CensusRow> rows;
  /// 2j/(k-1)! and 1/(k-1)!.
  double s_target = 0;
  double pi_target = 0;
};

/// One row per x (each x >= 16), computed in parallel over rows.
RatioTable ratio_table(const std::vector<std::uint64_t>& xs, std::uint64_t k, std::uint64_t j,
                       std::uint64_t sieve_max = kDefaultSieveMax);

}  // namespace lattdiv
