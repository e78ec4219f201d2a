#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ldiv/permgroup.hpp"
#include "ldiv/table.hpp"

namespace lattdiv {

struct LatticeOptions {
  std::uint64_t work_limit = kDefaultWorkLimit;
};

/// Subgroups in canonical order: by order, then by sorted element list.
struct SubgroupList {
  PermGroup parent;
  std::vector<PermGroup> subgroups;
};

struct SubgroupClass {
  PermGroup representative;
  std::size_t class_size = 0;
};

SubgroupList all_subgroups(const PermGroup& g, const LatticeOptions& opts = {});

/// Every G' with H <= G' <= G, found by joining cyclic subgroups onto H.
SubgroupList intermediate_subgroups(const PermGroup& g, const PermGroup& h,
                                    const LatticeOptions& opts = {});

/// Subgroups of g up to g-conjugacy, each with its class size.
std::vector<SubgroupClass> subgroup_conjugacy_classes(const PermGroup& g,
                                                      const LatticeOptions& opts = {});

/// One generator per cyclic subgroup (its least generating element), in
/// increasing index order.
std::vector<Elem> cyclic_subgroup_generators(const GroupTable& t);

/// Full subgroup lattice of a GroupTable's group.
///
/// Subgroups are found class by class: each new class representative K is
/// joined with every cyclic subgroup outside it, and any join not yet seen
/// contributes its whole conjugacy class. Every subgroup L > 1 equals
/// <M, x> for a maximal subgroup M of L, and a conjugate of M is some
/// processed representative, so every class is reached.
class SubgroupLattice {
 public:
  SubgroupLattice(const GroupTable& t, std::uint64_t work_limit = kDefaultWorkLimit);

  const GroupTable& table() const { return *table_; }
  /// Canonical order.
  const std::vector<IndexedSubgroup>& subgroups() const { return subgroups_; }
  /// Class id of each subgroup; ids follow the canonical order of the
  /// representatives.
  const std::vector<std::size_t>& class_ids() const { return class_id_; }
  /// Index (into subgroups()) of each class representative, the least member.
  const std::vector<std::size_t>& class_representatives() const { return class_rep_; }
  const std::vector<std::size_t>& class_sizes() const { return class_size_; }

  /// Indices of all subgroups containing `h`, in canonical order.
  std::vector<std::size_t> overgroups(const Bitset& h) const;
  std::optional<std::size_t> find(const Bitset& members) const;

  std::uint64_t work_used() const { return work_used_; }

 private:
  const GroupTable* table_;
  std::vector<IndexedSubgroup> subgroups_;
  std::vector<std::size_t> class_id_;
  std::vector<std::size_t> class_rep_;
  std::vector<std::size_t> class_size_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> index_;
  std::uint64_t work_used_ = 0;
};

/// All subgroups between h and the whole group, canonical order.
std::vector<IndexedSubgroup> join_ascent(const GroupTable& t, const IndexedSubgroup& h,
                                         WorkCounter& work);

/// Sorts by order, then by ascending member sequence.
void sort_canonical(std::vector<IndexedSubgroup>& subgroups);
bool canonical_less(const IndexedSubgroup& a, const IndexedSubgroup& b);

}  // namespace lattdiv
