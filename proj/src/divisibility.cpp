#include "ldiv/divisibility.hpp"

#include <algorithm>
#include <memory>

#include "ldiv/bounds.hpp"
#include "ldiv/error.hpp"
#include "ldiv/setcover.hpp"

namespace lattdiv {

namespace {

void require_prime(std::uint64_t ell) {
  if (!is_prime(ell)) throw ValidationError(std::to_string(ell) + " is not prime");
}

bool is_power_of(std::uint64_t n, std::uint64_t ell) { return n > 1 && prime_part(n, ell) == n; }

bool disjoint_from(const std::vector<Elem>& elems, const Bitset& h) {
  for (Elem y : elems)
    if (h.test(y)) return false;
  return true;
}

}  // namespace

GroupPair group_pair(PermGroup g, PermGroup h) {
  if (g.degree() != h.degree()) throw ValidationError("G and H have different degrees");
  if (!is_subgroup(h, g)) throw ValidationError("H is not a subgroup of G");
  return GroupPair{std::move(g), std::move(h)};
}

std::vector<WeakConstraint> weak_constraints(const GroupPair& pair, std::uint64_t ell) {
  require_prime(ell);
  std::vector<WeakConstraint> out;
  for (auto& cls : conjugacy_classes(pair.g)) {
    if (element_order(cls.front()) != ell) continue;
    bool outside = std::any_of(cls.begin(), cls.end(),
                               [&](const Permutation& x) { return !pair.h.contains(x); });
    if (!outside) continue;
    Permutation rep = cls.front();
    out.push_back({std::move(rep), std::move(cls)});
  }
  return out;
}

std::vector<StrongConstraint> strong_constraints(const GroupPair& pair, std::uint64_t ell) {
  require_prime(ell);
  std::vector<StrongConstraint> out;
  for (const auto& x : pair.g.elements()) {
    if (pair.h.contains(x) || !is_power_of(element_order(x), ell)) continue;
    if (pair.h.contains(x.pow(static_cast<std::int64_t>(ell)))) out.push_back({x});
  }
  return out;
}

bool covers_weak(const PermGroup& g_prime, const PermGroup& h, const WeakConstraint& c) {
  for (const auto& tau : c.members) {
    if (!g_prime.contains(tau)) continue;
    auto cls = conjugacy_class_of(g_prime, tau);
    if (std::none_of(cls.begin(), cls.end(), [&](const Permutation& x) { return h.contains(x); }))
      return true;
  }
  return false;
}

bool covers_strong(const PermGroup& g_prime, const PermGroup& h, const StrongConstraint& c) {
  if (!g_prime.contains(c.element)) return false;
  auto cls = conjugacy_class_of(g_prime, c.element);
  return std::none_of(cls.begin(), cls.end(), [&](const Permutation& x) { return h.contains(x); });
}

PairEngine::PairEngine(const GroupTable& t, Bitset h, std::vector<IndexedSubgroup> intermediates,
                       bool parallel)
    : table_(&t), h_(std::move(h)), intermediates_(std::move(intermediates)), parallel_(parallel) {}

std::vector<std::vector<Elem>> PairEngine::weak_classes(std::uint64_t ell) const {
  require_prime(ell);
  std::vector<std::vector<Elem>> out;
  for (auto& cls : table_classes(*table_)) {
    if (table_->order_of(cls.front()) != ell) continue;
    if (std::all_of(cls.begin(), cls.end(), [&](Elem x) { return h_.test(x); })) continue;
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<Elem> PairEngine::strong_elements(std::uint64_t ell) const {
  require_prime(ell);
  std::vector<Elem> out;
  for (Elem x = 0; x < table_->size(); ++x) {
    if (h_.test(x) || !is_power_of(table_->order_of(x), ell)) continue;
    if (h_.test(table_->pow(x, ell))) out.push_back(x);
  }
  return out;
}

std::optional<Elem> PairEngine::weak_tau(const IndexedSubgroup& k,
                                         const std::vector<Elem>& cls) const {
  Bitset done = table_->empty_set();
  for (Elem tau : cls) {
    if (!k.members.test(tau) || done.test(tau)) continue;
    auto orbit = class_within(*table_, k.gens, tau);
    if (disjoint_from(orbit, h_)) return tau;
    for (Elem y : orbit) done.set(y);
  }
  return std::nullopt;
}

bool PairEngine::strong_ok(const IndexedSubgroup& k, Elem sigma) const {
  return k.members.test(sigma) && disjoint_from(class_within(*table_, k.gens, sigma), h_);
}

std::vector<Bitset> PairEngine::weak_coverage(const std::vector<std::vector<Elem>>& classes) const {
  std::vector<Bitset> masks(intermediates_.size(), Bitset(classes.size()));
  const auto n = static_cast<std::ptrdiff_t>(intermediates_.size());
#pragma omp parallel for schedule(dynamic) if (parallel_)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& sub = intermediates_[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (weak_tau(sub, classes[c])) masks[static_cast<std::size_t>(k)].set(c);
  }
  return masks;
}

std::vector<Bitset> PairEngine::strong_coverage(const std::vector<Elem>& elements) const {
  std::vector<std::int64_t> slot(table_->size(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) slot[elements[i]] = static_cast<std::int64_t>(i);

  std::vector<Bitset> masks(intermediates_.size(), Bitset(elements.size()));
  const auto n = static_cast<std::ptrdiff_t>(intermediates_.size());
#pragma omp parallel for schedule(dynamic) if (parallel_)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& sub = intermediates_[static_cast<std::size_t>(k)];
    auto& mask = masks[static_cast<std::size_t>(k)];
    Bitset decided(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (decided.test(i) || !sub.members.test(elements[i])) continue;
      // Constraints in one K-class share the verdict.
      auto orbit = class_within(*table_, sub.gens, elements[i]);
      const bool ok = disjoint_from(orbit, h_);
      for (Elem y : orbit) {
        if (slot[y] < 0) continue;
        decided.set(static_cast<std::size_t>(slot[y]));
        if (ok) mask.set(static_cast<std::size_t>(slot[y]));
      }
    }
  }
  return masks;
}

std::vector<Bitset> reference_weak_coverage(const GroupPair& pair, std::uint64_t ell,
                                            const std::vector<PermGroup>& candidates) {
  auto cons = weak_constraints(pair, ell);
  std::vector<Bitset> masks;
  for (const auto& k : candidates) {
    Bitset m(cons.size());
    for (std::size_t c = 0; c < cons.size(); ++c)
      if (covers_weak(k, pair.h, cons[c])) m.set(c);
    masks.push_back(std::move(m));
  }
  return masks;
}

std::vector<Bitset> reference_strong_coverage(const GroupPair& pair, std::uint64_t ell,
                                              const std::vector<PermGroup>& candidates) {
  auto cons = strong_constraints(pair, ell);
  std::vector<Bitset> masks;
  for (const auto& k : candidates) {
    Bitset m(cons.size());
    for (std::size_t c = 0; c < cons.size(); ++c)
      if (covers_strong(k, pair.h, cons[c])) m.set(c);
    masks.push_back(std::move(m));
  }
  return masks;
}

namespace {

struct Solved {
  ModeResult result;
  std::optional<std::uint64_t> cost;
};

Solved solve_weak(const PairEngine& e, std::uint64_t ell, const DivisibilityOptions& opts) {
  const auto& t = e.table();
  auto classes = e.weak_classes(ell);
  Solved out;
  out.result.constraint_count = classes.size();
  auto masks = e.weak_coverage(classes);
  std::vector<std::uint64_t> weights(masks.size(), 1);
  auto cover = solve_set_cover(classes.size(), masks, weights, opts.node_limit);
  if (!cover.feasible) {
    out.result.uncovered = t.element(classes[*cover.uncovered].front());
    return out;
  }
  out.result.divisible = true;
  out.cost = cover.cost;
  std::vector<bool> assigned(classes.size(), false);
  for (std::size_t k : cover.chosen) {
    const auto& sub = e.intermediates()[k];
    Witness w{to_perm_group(t, sub), sub.order / e.h().count(), {}, {}};
    masks[k].for_each([&](std::size_t c) {
      if (assigned[c]) return;
      assigned[c] = true;
      w.covers.push_back(c);
      w.taus.push_back(t.element(*e.weak_tau(sub, classes[c])));
    });
    out.result.witnesses.push_back(std::move(w));
  }
  return out;
}

Solved solve_strong(const PairEngine& e, std::uint64_t ell, const DivisibilityOptions& opts) {
  const auto& t = e.table();
  auto elements = e.strong_elements(ell);
  Solved out;
  out.result.constraint_count = elements.size();
  auto masks = e.strong_coverage(elements);
  const std::uint64_t h_order = e.h().count();
  std::vector<std::uint64_t> weights;
  for (const auto& k : e.intermediates()) weights.push_back(k.order / h_order);
  auto cover = solve_set_cover(elements.size(), masks, weights, opts.node_limit);
  if (!cover.feasible) {
    out.result.uncovered = t.element(elements[*cover.uncovered]);
    return out;
  }
  out.result.divisible = true;
  out.cost = cover.cost;
  std::vector<bool> assigned(elements.size(), false);
  for (std::size_t k : cover.chosen) {
    const auto& sub = e.intermediates()[k];
    Witness w{to_perm_group(t, sub), weights[k], {}, {}};
    masks[k].for_each([&](std::size_t c) {
      if (assigned[c]) return;
      assigned[c] = true;
      w.covers.push_back(c);
    });
    out.result.witnesses.push_back(std::move(w));
  }
  return out;
}

struct Prepared {
  GroupTable table;
  std::optional<PairEngine> engine;
};

std::unique_ptr<Prepared> prepare(const GroupPair& pair, const DivisibilityOptions& opts) {
  auto p = std::make_unique<Prepared>(Prepared{GroupTable(pair.g), std::nullopt});
  WorkCounter work(opts.work_limit);
  auto h = indexed(p->table, pair.h);
  auto mids = join_ascent(p->table, h, work);
  p->engine.emplace(p->table, h.members, std::move(mids), opts.parallel);
  return p;
}

Rational big_delta_value(std::uint64_t cost, std::uint64_t ell) {
  return Rational(static_cast<std::int64_t>(cost), static_cast<std::int64_t>(ell));
}

}  // namespace

bool decide(const GroupPair& pair, std::uint64_t ell, Mode mode, const DivisibilityOptions& opts) {
  require_prime(ell);
  auto p = prepare(pair, opts);
  const auto& e = *p->engine;
  std::vector<Bitset> masks;
  std::size_t universe;
  if (mode == Mode::weak) {
    auto classes = e.weak_classes(ell);
    universe = classes.size();
    masks = e.weak_coverage(classes);
  } else {
    auto elements = e.strong_elements(ell);
    universe = elements.size();
    masks = e.strong_coverage(elements);
  }
  Bitset all(universe);
  for (const auto& m : masks) all |= m;
  return all.count() == universe;
}

ExactValues exact_values(const GroupPair& pair, std::uint64_t ell, const DivisibilityOptions& opts) {
  require_prime(ell);
  auto p = prepare(pair, opts);
  auto weak = solve_weak(*p->engine, ell, opts);
  auto strong = solve_strong(*p->engine, ell, opts);
  ExactValues out;
  out.divisible = weak.result.divisible;
  out.delta = weak.cost;
  out.strongly_divisible = strong.result.divisible;
  if (strong.cost) out.big_delta = big_delta_value(*strong.cost, ell);
  return out;
}

DivisibilityReport delta_exact(const GroupPair& pair, std::uint64_t ell,
                               const DivisibilityOptions& opts) {
  require_prime(ell);
  auto p = prepare(pair, opts);
  auto weak = solve_weak(*p->engine, ell, opts);
  DivisibilityReport r{pair, ell, std::move(weak.result), std::nullopt, weak.cost, std::nullopt,
                       {}, {}, p->engine->intermediates().size()};
  return r;
}

DivisibilityReport big_delta_exact(const GroupPair& pair, std::uint64_t ell,
                                   const DivisibilityOptions& opts) {
  require_prime(ell);
  auto p = prepare(pair, opts);
  auto strong = solve_strong(*p->engine, ell, opts);
  DivisibilityReport r{pair, ell, std::nullopt, std::move(strong.result), std::nullopt,
                       std::nullopt, {}, {}, p->engine->intermediates().size()};
  if (strong.cost) r.big_delta = big_delta_value(*strong.cost, ell);
  return r;
}

DivisibilityReport analyze(const GroupPair& pair, std::uint64_t ell, const BoundHints& hints,
                           const DivisibilityOptions& opts) {
  require_prime(ell);
  auto p = prepare(pair, opts);
  auto weak = solve_weak(*p->engine, ell, opts);
  auto strong = solve_strong(*p->engine, ell, opts);
  DivisibilityReport r{pair, ell, std::move(weak.result), std::move(strong.result), weak.cost,
                       std::nullopt, {}, {}, p->engine->intermediates().size()};
  if (strong.cost) r.big_delta = big_delta_value(*strong.cost, ell);
  r.bounds = theorem_bounds(pair, ell, hints, opts);
  ExactValues exact{r.weak->divisible, r.strong->divisible, r.delta, r.big_delta};
  r.violations = check_bounds(r.bounds, exact);
  return r;
}

ScanResult scan_all_primes(const PermGroup& g, const DivisibilityOptions& opts) {
  GroupTable t(g);
  SubgroupLattice lattice(t, opts.work_limit);
  ScanResult out;
  out.primes = prime_divisors(g.order());
  out.subgroup_count = lattice.subgroups().size();
  for (std::size_t c = 0; c < lattice.class_representatives().size(); ++c) {
    const auto& h = lattice.subgroups()[lattice.class_representatives()[c]];
    if (h.order == 1 || h.order == g.order()) continue;
    std::vector<IndexedSubgroup> mids;
    for (std::size_t i : lattice.overgroups(h.members)) mids.push_back(lattice.subgroups()[i]);
    PairEngine engine(t, h.members, std::move(mids), opts.parallel);
    ScanRow row{to_perm_group(t, h), lattice.class_sizes()[c], {}, true};
    for (std::uint64_t ell : out.primes) {
      auto classes = engine.weak_classes(ell);
      Bitset all(classes.size());
      for (const auto& m : engine.weak_coverage(classes)) all |= m;
      const bool ok = all.count() == classes.size();
      row.verdicts[ell] = ok;
      row.all_primes = row.all_primes && ok;
    }
    if (row.all_primes) ++out.all_prime_count;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace lattdiv
