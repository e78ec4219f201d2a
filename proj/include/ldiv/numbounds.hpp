#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldiv/divisibility.hpp"
#include "ldiv/rational.hpp"

namespace lattdiv {

/// Signature of a number field: r1 real embeddings, r2 complex pairs.
struct UnitData {
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
  std::uint64_t degree = 1;
  /// The field contains a primitive ell-th root of unity.
  bool has_mu_ell = false;
};

struct UnitRank {
  std::uint64_t value = 0;
  /// ell = 2 with has_mu_ell = false: -1 is always a square root of unity, so
  /// the flag was overridden.
  bool forced_mu = false;
};

/// Free unit rank r1 + r2 - 1. Throws unless r1 + 2 r2 = degree >= 1.
std::uint64_t unit_rank(const UnitData& u);

/// ell-rank of the unit group: free rank plus one when mu_ell is present.
UnitRank unit_l_rank(const UnitData& u, std::uint64_t ell);

/// ell-adic valuation of n >= 1.
std::uint64_t e_ell(std::uint64_t n, std::uint64_t ell);

/// Number of distinct primes dividing |n|, n != 0.
std::uint64_t omega(std::int64_t n);

enum class RankMode { weak, strong, base };

struct RankBoundInput {
  std::uint64_t ell = 2;
  RankMode mode = RankMode::weak;
  /// t_ell (weak), T_ell (strong) or s_ell (base).
  std::uint64_t count = 0;
  /// delta (weak) or Delta (strong); ignored in base mode.
  Rational invariant{1};
  UnitData unit_k;
  UnitData unit_f;
  std::uint64_t rel_degree = 1;
  /// Base mode only: ell-rank of (F* meet K*^ell) / F*^ell.
  std::uint64_t kummer_rank = 0;
};

struct RankBound {
  Rational real_bound{0};
  std::int64_t effective_bound = 0;
  std::uint64_t rk_k = 0;
  std::uint64_t rk_f = 0;
  std::uint64_t e = 0;
  std::vector<std::string> warnings;
};

/// Lower bound on rk_ell Cl(K). effective_bound is the ceiling of real_bound.
RankBound rank_bound(const RankBoundInput& in);

/// rk_cl > 2 + 2 sqrt(free_unit_rank + 1), decided in integers.
bool golod_shafarevich(std::int64_t rk_cl, std::int64_t free_unit_rank);

struct TowerPrime {
  std::uint64_t ell = 2;
  std::uint64_t delta = 1;
  bool mu_k = false;
  bool mu_f = false;
};

struct TowerInput {
  /// [K:F].
  std::uint64_t degree = 2;
  /// omega_F of the relative discriminant.
  std::uint64_t omega_f_disc = 0;
  /// omega([K:F]); derived from degree when absent, checked when present.
  std::optional<std::uint64_t> omega_degree;
  /// Degree over Q of the Galois closure of K/F.
  std::uint64_t closure_degree = 2;
  UnitData unit_k;
  UnitData unit_f;
  std::vector<TowerPrime> per_prime;
};

struct TowerPrimeDetail {
  std::uint64_t ell = 0;
  std::uint64_t delta = 0;
  std::uint64_t rk_k = 0;
  std::uint64_t rk_f = 0;
  std::uint64_t e = 0;
  /// The bracket is base + 2 sqrt(radicand).
  std::int64_t base = 0;
  std::uint64_t radicand = 0;
  /// ceil(omega_F / omega(d)) >= delta * bracket.
  bool meets = false;
  /// bracket <= 4 [K:Q].
  bool bracket_within_4n = false;
  /// Display only.
  double bracket_approx = 0;
};

struct TowerResult {
  /// ceil(omega_F(D) / omega(d)) reaches every per-prime bracket times delta.
  bool omega_criterion = false;
  /// omega_F(D) >= 4 d' omega(d), d' the Galois closure degree.
  bool degree_criterion = false;
  std::uint64_t ceiling = 0;
  std::uint64_t omega_degree = 0;
  std::vector<TowerPrimeDetail> details;
};

TowerResult tower_criteria(const TowerInput& in);

struct Place {
  bool residue_is_1_mod_ell = false;
  bool in_t0 = false;
  std::uint64_t local_degree = 0;
};

struct RayClassBound {
  std::uint64_t e = 0;
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> epsilons;
};

/// Count of degree-ell cyclic extensions with the given ramification
/// allowance. Throws CapExceeded when the bound overflows 64 bits.
RayClassBound rayclass_bound(std::uint64_t rk_cl_f, std::uint64_t s_inf, std::uint64_t ell,
                             const std::vector<Place>& places);

struct MalleA {
  Rational a{0};
  /// Largest orbit count below [G:H] and an element attaining it.
  std::uint64_t best_orbits = 0;
  Permutation witness;
  /// Elements acting trivially on the cosets, left out of the maximum.
  std::uint64_t excluded = 0;
};

/// max over sigma of 1 / ([G:H] - n_sigma), n_sigma the number of
/// <sigma>-orbits on the cosets. Elements with n_sigma = [G:H] are skipped.
MalleA malle_a(const GroupPair& pair);

struct MalleExponent {
  std::int64_t e = 0;
  /// Per prime: floor(delta (d + 2 sqrt d + e_ell + 2 - rk)).
  std::map<std::uint64_t, std::int64_t> terms;
  std::map<std::uint64_t, std::uint64_t> deltas;
  bool degenerate = false;
  bool nilpotent = false;
};

/// Exponent from given deltas. d is [F:Q][G:H]; index is [G:H].
MalleExponent malle_exponent(std::uint64_t index, std::uint64_t d,
                             const std::map<std::uint64_t, std::uint64_t>& deltas,
                             const std::map<std::uint64_t, std::uint64_t>& rk_f);

/// Same, with deltas computed exactly. Throws ValidationError when the pair is
/// not divisible at some prime dividing the index.
MalleExponent malle_exponent(const GroupPair& pair, std::uint64_t d,
                             const std::map<std::uint64_t, std::uint64_t>& rk_f,
                             const DivisibilityOptions& opts = {});

/// floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

}  // namespace lattdiv
