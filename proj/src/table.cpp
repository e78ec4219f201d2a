#include "ldiv/table.hpp"

#include <algorithm>

#include "ldiv/error.hpp"

namespace lattdiv {

GroupTable::GroupTable(PermGroup g, std::size_t table_cap) : group_(std::move(g)) {
  const auto& elems = group_.elements();
  const std::size_t n = elems.size();
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elems[i], static_cast<Elem>(i));

  inverse_.resize(n);
  orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inverse_[i] = index_.at(elems[i].inverse());
    orders_[i] = element_order(elems[i]);
  }
  for (const auto& s : group_.generators()) generators_.push_back(index_.at(s));

  if (n <= table_cap) {
    table_.resize(n * n);
    const std::size_t degree = group_.degree();
    // Rows are independent; each thread composes into its own scratch buffer.
#pragma omp parallel
    {
      std::vector<Point> scratch(degree);
#pragma omp for schedule(static)
      for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(n); ++a) {
        auto ai = elems[static_cast<std::size_t>(a)].images();
        for (std::size_t b = 0; b < n; ++b) {
          auto bi = elems[b].images();
          for (std::size_t x = 0; x < degree; ++x) scratch[x] = ai[bi[x]];
          table_[static_cast<std::size_t>(a) * n + b] = index_.at(Permutation(scratch));
        }
      }
    }
  }
}

Elem GroupTable::mul_slow(Elem a, Elem b) const { return index_.at(element(a) * element(b)); }

Elem GroupTable::pow(Elem a, std::uint64_t e) const {
  Elem result = 0;
  Elem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::optional<Elem> GroupTable::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem GroupTable::index_of(const Permutation& p) const {
  if (p.degree() != group_.degree()) throw ValidationError("degree mismatch");
  auto i = find(p);
  if (!i) throw ValidationError("element " + p.to_cycle_string() + " is not in the group");
  return *i;
}

Bitset GroupTable::members_of(const PermGroup& h) const {
  Bitset b(size());
  for (const auto& x : h.elements()) b.set(index_of(x));
  return b;
}

void WorkCounter::add(std::uint64_t steps) {
  used_ += steps;
  if (used_ > limit_)
    throw CapExceeded("lattice work limit of " + std::to_string(limit_) + " steps exceeded");
}

IndexedSubgroup trivial_subgroup(const GroupTable& t) {
  IndexedSubgroup k{t.empty_set(), {}, 1};
  k.members.set(0);
  return k;
}

IndexedSubgroup closure(const GroupTable& t, std::span<const Elem> gens) {
  IndexedSubgroup k = trivial_subgroup(t);
  for (Elem x : gens) {
    if (k.members.test(x)) continue;
    k = join(t, k, x, nullptr);
  }
  return k;
}

IndexedSubgroup join(const GroupTable& t, const IndexedSubgroup& k, Elem x, std::uint64_t* steps) {
  IndexedSubgroup out;
  out.members = k.members;
  out.gens = k.gens;
  if (k.members.test(x)) {
    out.order = k.order;
    return out;
  }
  out.gens.push_back(x);

  const std::vector<Elem> base = k.members.to_indices();
  std::vector<Elem> reps{0};
  std::size_t added = base.size();
  // The growing set is a union of right cosets K r; it is closed once every
  // r s (s a generator) already lies in it.
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (Elem s : out.gens) {
      Elem y = t.mul(reps[i], s);
      if (out.members.test(y)) continue;
      for (Elem b : base) out.members.set(t.mul(b, y));
      added += base.size();
      reps.push_back(y);
    }
  }
  out.order = base.size() * reps.size();
  if (steps) *steps += added;
  return out;
}

IndexedSubgroup whole_group(const GroupTable& t) {
  IndexedSubgroup k{t.empty_set(), t.generators(), t.size()};
  for (std::size_t i = 0; i < t.size(); ++i) k.members.set(i);
  return k;
}

IndexedSubgroup indexed(const GroupTable& t, const PermGroup& h) {
  IndexedSubgroup k{t.members_of(h), {}, h.order()};
  for (const auto& s : h.generators()) k.gens.push_back(t.index_of(s));
  return k;
}

IndexedSubgroup conjugate(const GroupTable& t, Elem g, const IndexedSubgroup& k) {
  IndexedSubgroup out{t.empty_set(), {}, k.order};
  k.members.for_each([&](std::size_t a) { out.members.set(t.conj(g, static_cast<Elem>(a))); });
  for (Elem s : k.gens) out.gens.push_back(t.conj(g, s));
  return out;
}

std::vector<Elem> class_within(const GroupTable& t, std::span<const Elem> gens, Elem a) {
  std::vector<Elem> orbit{a};
  Bitset seen = t.empty_set();
  seen.set(a);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (Elem s : gens) {
      Elem y = t.conj(s, orbit[i]);
      if (!seen.test(y)) {
        seen.set(y);
        orbit.push_back(y);
      }
    }
  }
  return orbit;
}

std::vector<std::vector<Elem>> table_classes(const GroupTable& t) {
  std::vector<std::vector<Elem>> classes;
  Bitset done = t.empty_set();
  for (Elem a = 0; a < t.size(); ++a) {
    if (done.test(a)) continue;
    auto cls = class_within(t, t.generators(), a);
    std::sort(cls.begin(), cls.end());
    for (Elem x : cls) done.set(x);
    classes.push_back(std::move(cls));
  }
  return classes;
}

PermGroup to_perm_group(const GroupTable& t, const IndexedSubgroup& k) {
  std::vector<Permutation> elems;
  elems.reserve(k.order);
  k.members.for_each([&](std::size_t a) { elems.push_back(t.element(static_cast<Elem>(a))); });
  std::vector<Permutation> gens;
  for (Elem s : k.gens) gens.push_back(t.element(s));
  return PermGroup::from_closed_set(t.group().degree(), std::move(gens), std::move(elems));
}

}  // namespace lattdiv
