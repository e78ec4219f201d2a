#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ldiv/bitset.hpp"
#include "ldiv/permgroup.hpp"

namespace lattdiv {

/// Index of an element in the sorted element list of a GroupTable's group.
/// The identity is always index 0.
using Elem = std::uint32_t;

/// Indexed view of a PermGroup used by the lattice and divisibility kernels.
/// Products are tabulated when the group is small enough; larger groups
/// compose permutations and look the result up.
class GroupTable {
 public:
  static constexpr std::size_t kDefaultTableCap = 4096;

  explicit GroupTable(PermGroup g, std::size_t table_cap = kDefaultTableCap);

  const PermGroup& group() const { return group_; }
  std::size_t size() const { return group_.elements().size(); }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * size() + b];
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// g a g^-1
  Elem conj(Elem g, Elem a) const { return mul(mul(g, a), inverse_[g]); }
  Elem pow(Elem a, std::uint64_t e) const;
  std::uint64_t order_of(Elem a) const { return orders_[a]; }

  const Permutation& element(Elem a) const { return group_.elements()[a]; }
  std::optional<Elem> find(const Permutation& p) const;
  /// Throws ValidationError if p is not in the group.
  Elem index_of(const Permutation& p) const;

  const std::vector<Elem>& generators() const { return generators_; }

  Bitset empty_set() const { return Bitset(size()); }
  /// Bitset of the elements of a subgroup (or any subset) of the group.
  Bitset members_of(const PermGroup& h) const;

 private:
  Elem mul_slow(Elem a, Elem b) const;

  PermGroup group_;
  std::vector<std::uint32_t> table_;
  std::vector<Elem> inverse_;
  std::vector<std::uint64_t> orders_;
  std::vector<Elem> generators_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
};

/// A subgroup of a GroupTable's group held as a membership bitset plus a
/// generating set of element indices.
struct IndexedSubgroup {
  Bitset members;
  std::vector<Elem> gens;
  std::size_t order = 0;
};

/// Counts closure work so runaway searches stop with CapExceeded instead of
/// running open-ended.
class WorkCounter {
 public:
  explicit WorkCounter(std::uint64_t limit) : limit_(limit) {}
  void add(std::uint64_t steps);
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

inline constexpr std::uint64_t kDefaultWorkLimit = 1'000'000'000ULL;

/// Subgroup generated by the given elements.
IndexedSubgroup closure(const GroupTable& t, std::span<const Elem> gens);

/// <K, x> grown from K by adding right cosets of K (Dimino's method).
/// `steps` receives the number of element insertions performed.
IndexedSubgroup join(const GroupTable& t, const IndexedSubgroup& k, Elem x, std::uint64_t* steps);

IndexedSubgroup trivial_subgroup(const GroupTable& t);
IndexedSubgroup whole_group(const GroupTable& t);
IndexedSubgroup indexed(const GroupTable& t, const PermGroup& h);

/// g K g^-1.
IndexedSubgroup conjugate(const GroupTable& t, Elem g, const IndexedSubgroup& k);

/// Conjugacy class of a inside the subgroup generated by `gens` (a must lie
/// in that subgroup), as element indices.
std::vector<Elem> class_within(const GroupTable& t, std::span<const Elem> gens, Elem a);

/// Conjugacy classes of the whole group, each sorted, ordered by least member.
std::vector<std::vector<Elem>> table_classes(const GroupTable& t);

PermGroup to_perm_group(const GroupTable& t, const IndexedSubgroup& k);

}  // namespace lattdiv
