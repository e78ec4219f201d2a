#include "ldiv/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ldiv/error.hpp"

namespace lattdiv {

bool canonical_less(const IndexedSubgroup& a, const IndexedSubgroup& b) {
  if (a.order != b.order) return a.order < b.order;
  return member_order_less(a.members, b.members);
}

void sort_canonical(std::vector<IndexedSubgroup>& subgroups) {
  std::sort(subgroups.begin(), subgroups.end(), canonical_less);
}

std::vector<Elem> cyclic_subgroup_generators(const GroupTable& t) {
  std::vector<Elem> gens;
  Bitset done = t.empty_set();
  for (Elem x = 0; x < t.size(); ++x) {
    if (done.test(x)) continue;
    gens.push_back(x);
    const std::uint64_t n = t.order_of(x);
    Elem p = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      p = t.mul(p, x);
      if (std::gcd(k, n) == 1) done.set(p);
    }
  }
  return gens;
}

namespace {

// Joins k with every listed generator outside it, in parallel. Results are
// returned in the order of `gens`; entries for generators inside k are empty.
std::vector<IndexedSubgroup> join_all(const GroupTable& t, const IndexedSubgroup& k,
                                      const std::vector<Elem>& gens, WorkCounter& work) {
  std::vector<IndexedSubgroup> out(gens.size());
  std::uint64_t steps = 0;
  const auto n = static_cast<std::ptrdiff_t>(gens.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : steps)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Elem x = gens[static_cast<std::size_t>(i)];
    if (k.members.test(x)) continue;
    std::uint64_t s = 0;
    out[static_cast<std::size_t>(i)] = join(t, k, x, &s);
    steps += s;
  }
  work.add(steps);
  return out;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const GroupTable& t, std::uint64_t work_limit) : table_(&t) {
  WorkCounter work(work_limit);
  const auto cyclic = cyclic_subgroup_generators(t);

  std::vector<IndexedSubgroup> found;
  std::vector<std::size_t> raw_class;
  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  std::vector<std::size_t> reps;  // positions in `found`
  std::size_t classes = 0;

  auto add_class = [&](IndexedSubgroup j) {
    const std::size_t cls = classes++;
    const std::size_t start = found.size();
    seen.emplace(j.members, found.size());
    found.push_back(std::move(j));
    raw_class.push_back(cls);
    reps.push_back(start);
    for (std::size_t i = start; i < found.size(); ++i) {
      for (Elem s : t.generators()) {
        IndexedSubgroup c = conjugate(t, s, found[i]);
        if (seen.contains(c.members)) continue;
        seen.emplace(c.members, found.size());
        found.push_back(std::move(c));
        raw_class.push_back(cls);
      }
    }
    work.add(found.size() - start);
  };

  add_class(trivial_subgroup(t));
  for (std::size_t r = 0; r < reps.size(); ++r) {
    // Copy: found may reallocate while this class is being expanded.
    const IndexedSubgroup k = found[reps[r]];
    auto joins = join_all(t, k, cyclic, work);
    for (auto& j : joins) {
      if (j.order == 0 || seen.contains(j.members)) continue;
      add_class(std::move(j));
    }
  }

  std::vector<std::size_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(found[a], found[b]); });

  subgroups_.reserve(found.size());
  std::vector<std::size_t> class_remap(classes, SIZE_MAX);
  class_size_.assign(classes, 0);
  class_id_.reserve(found.size());
  std::size_t next_class = 0;
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    const std::size_t old_cls = raw_class[perm[pos]];
    if (class_remap[old_cls] == SIZE_MAX) {
      class_remap[old_cls] = next_class++;
      class_rep_.push_back(pos);
    }
    const std::size_t cls = class_remap[old_cls];
    class_id_.push_back(cls);
    ++class_size_[cls];
    index_.emplace(found[perm[pos]].members, pos);
    subgroups_.push_back(std::move(found[perm[pos]]));
  }
  work_used_ = work.used();
}

std::vector<std::size_t> SubgroupLattice::overgroups(const Bitset& h) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < subgroups_.size(); ++i)
    if (h.is_subset_of(subgroups_[i].members)) out.push_back(i);
  return out;
}

std::optional<std::size_t> SubgroupLattice::find(const Bitset& members) const {
  auto it = index_.find(members);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<IndexedSubgroup> join_ascent(const GroupTable& t, const IndexedSubgroup& h,
                                         WorkCounter& work) {
  const auto cyclic = cyclic_subgroup_generators(t);
  std::vector<IndexedSubgroup> found{h};
  std::unordered_set<Bitset, BitsetHash> seen{h.members};
  for (std::size_t i = 0; i < found.size(); ++i) {
    const IndexedSubgroup k = found[i];
    auto joins = join_all(t, k, cyclic, work);
    for (auto& j : joins) {
      if (j.order == 0 || !seen.insert(j.members).second) continue;
      found.push_back(std::move(j));
    }
  }
  sort_canonical(found);
  return found;
}

namespace {

SubgroupList to_list(const GroupTable& t, const std::vector<IndexedSubgroup>& subs) {
  SubgroupList out{t.group(), {}};
  out.subgroups.reserve(subs.size());
  for (const auto& k : subs) out.subgroups.push_back(to_perm_group(t, k));
  return out;
}

}  // namespace

SubgroupList all_subgroups(const PermGroup& g, const LatticeOptions& opts) {
  GroupTable t(g);
  SubgroupLattice lattice(t, opts.work_limit);
  return to_list(t, lattice.subgroups());
}

SubgroupList intermediate_subgroups(const PermGroup& g, const PermGroup& h,
                                    const LatticeOptions& opts) {
  if (!is_subgroup(h, g)) throw ValidationError("H is not a subgroup of G");
  GroupTable t(g);
  WorkCounter work(opts.work_limit);
  return to_list(t, join_ascent(t, indexed(t, h), work));
}

std::vector<SubgroupClass> subgroup_conjugacy_classes(const PermGroup& g,
                                                      const LatticeOptions& opts) {
  GroupTable t(g);
  SubgroupLattice lattice(t, opts.work_limit);
  std::vector<SubgroupClass> out;
  for (std::size_t c = 0; c < lattice.class_representatives().size(); ++c) {
    const auto& rep = lattice.subgroups()[lattice.class_representatives()[c]];
    out.push_back({to_perm_group(t, rep), lattice.class_sizes()[c]});
  }
  return out;
}

}  // namespace lattdiv
