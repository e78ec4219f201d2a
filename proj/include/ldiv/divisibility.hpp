#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldiv/lattice.hpp"
#include "ldiv/permgroup.hpp"
#include "ldiv/rational.hpp"
#include "ldiv/table.hpp"

namespace lattdiv {

/// H <= G, checked on construction.
struct GroupPair {
  PermGroup g;
  PermGroup h;
};

/// Throws ValidationError unless h is a subgroup of g.
GroupPair group_pair(PermGroup g, PermGroup h);

struct WeakConstraint {
  Permutation class_rep;
  std::vector<Permutation> members;  // the G-class, sorted
};

struct StrongConstraint {
  Permutation element;
};

enum class Mode { weak, strong };

/// One constraint per G-class of order-ell elements meeting G - H, ordered by
/// class representative. Throws ValidationError if ell is not prime.
std::vector<WeakConstraint> weak_constraints(const GroupPair& pair, std::uint64_t ell);

/// Every sigma in G - H of ell-power order with sigma^ell in H, sorted.
std::vector<StrongConstraint> strong_constraints(const GroupPair& pair, std::uint64_t ell);

/// Some tau in the class and in G' has its G'-class disjoint from H.
bool covers_weak(const PermGroup& g_prime, const PermGroup& h, const WeakConstraint& c);

/// sigma lies in G' and its G'-class is disjoint from H.
bool covers_strong(const PermGroup& g_prime, const PermGroup& h, const StrongConstraint& c);

struct DivisibilityOptions {
  std::uint64_t work_limit = kDefaultWorkLimit;
  bool parallel = true;
  std::uint64_t node_limit = 50'000'000;
};

bool decide(const GroupPair& pair, std::uint64_t ell, Mode mode,
            const DivisibilityOptions& opts = {});

/// A subgroup chosen by the exact search, with the constraints it is credited
/// with (indices into the constraint list of its mode).
struct Witness {
  PermGroup subgroup;
  std::uint64_t index_over_h = 0;
  std::vector<std::size_t> covers;
  /// Weak mode only: for each covered constraint, the tau whose class avoids H.
  std::vector<Permutation> taus;
};

struct ModeResult {
  bool divisible = false;
  std::size_t constraint_count = 0;
  std::vector<Witness> witnesses;
  /// A constraint no intermediate subgroup covers (weak: class representative).
  std::optional<Permutation> uncovered;
};

struct BoundEntry {
  std::optional<Rational> value;
  /// Failed hypothesis when value is absent, or the supporting data otherwise.
  std::string note;
  /// The value is exact, not just an upper bound.
  bool equality = false;
  /// What the underlying result asserts about (strong) divisibility of the pair.
  std::optional<bool> claims_divisible;
  std::optional<bool> claims_strong;
};

struct DivisibilityReport {
  GroupPair pair;
  std::uint64_t prime = 0;
  std::optional<ModeResult> weak;
  std::optional<ModeResult> strong;
  std::optional<std::uint64_t> delta;
  std::optional<Rational> big_delta;
  std::map<std::string, BoundEntry> bounds;
  std::vector<std::string> violations;
  std::size_t intermediate_count = 0;
};

/// Exact invariants without bound cross-checks.
struct ExactValues {
  bool divisible = false;
  bool strongly_divisible = false;
  std::optional<std::uint64_t> delta;
  std::optional<Rational> big_delta;
};

ExactValues exact_values(const GroupPair& pair, std::uint64_t ell,
                         const DivisibilityOptions& opts = {});

struct BoundHints;

DivisibilityReport delta_exact(const GroupPair& pair, std::uint64_t ell,
                               const DivisibilityOptions& opts = {});
DivisibilityReport big_delta_exact(const GroupPair& pair, std::uint64_t ell,
                                   const DivisibilityOptions& opts = {});

/// Both invariants plus every theorem bound, cross-checked.
DivisibilityReport analyze(const GroupPair& pair, std::uint64_t ell, const BoundHints& hints,
                           const DivisibilityOptions& opts = {});

/// Indexed engine shared by the public entry points and the scan.
class PairEngine {
 public:
  PairEngine(const GroupTable& t, Bitset h, std::vector<IndexedSubgroup> intermediates,
             bool parallel);

  const GroupTable& table() const { return *table_; }
  const Bitset& h() const { return h_; }
  const std::vector<IndexedSubgroup>& intermediates() const { return intermediates_; }

  /// Sorted element lists of the weak constraint classes.
  std::vector<std::vector<Elem>> weak_classes(std::uint64_t ell) const;
  std::vector<Elem> strong_elements(std::uint64_t ell) const;

  /// masks[k] = constraints covered by intermediate k.
  std::vector<Bitset> weak_coverage(const std::vector<std::vector<Elem>>& classes) const;
  std::vector<Bitset> strong_coverage(const std::vector<Elem>& elements) const;

  /// Element tau of `cls` in K whose K-class avoids H, if any.
  std::optional<Elem> weak_tau(const IndexedSubgroup& k, const std::vector<Elem>& cls) const;
  bool strong_ok(const IndexedSubgroup& k, Elem sigma) const;

 private:
  const GroupTable* table_;
  Bitset h_;
  std::vector<IndexedSubgroup> intermediates_;
  bool parallel_;
};

/// Coverage computed by the public PermGroup-level predicates, one candidate
/// at a time. Reference for the indexed kernels.
std::vector<Bitset> reference_weak_coverage(const GroupPair& pair, std::uint64_t ell,
                                            const std::vector<PermGroup>& candidates);
std::vector<Bitset> reference_strong_coverage(const GroupPair& pair, std::uint64_t ell,
                                              const std::vector<PermGroup>& candidates);

struct ScanRow {
  PermGroup representative;
  std::size_t class_size = 0;
  std::map<std::uint64_t, bool> verdicts;
  bool all_primes = false;
};

struct ScanResult {
  std::vector<std::uint64_t> primes;
  std::vector<ScanRow> rows;
  std::size_t all_prime_count = 0;
  std::size_t subgroup_count = 0;
};

/// Conjugacy classes of subgroups 1 < H < G (conjugacy in G) with their
/// divisibility verdicts at each prime dividing |G|.
ScanResult scan_all_primes(const PermGroup& g, const DivisibilityOptions& opts = {});

}  // namespace lattdiv
