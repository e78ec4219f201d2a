#include "ldiv/bounds.hpp"

#include <algorithm>

#include "ldiv/action.hpp"
#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

Rational ratio(std::uint64_t a, std::uint64_t b) {
  return Rational(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
}

Rational whole(std::uint64_t a) { return Rational(static_cast<std::int64_t>(a)); }

std::uint64_t product_order(const PermGroup& a, const PermGroup& b) {
  return a.order() * b.order() / intersection(a, b).order();
}

std::uint64_t count_chain_steps(const PermGroup& h, const std::vector<PermGroup>& series) {
  std::uint64_t steps = 0;
  std::uint64_t prev = 0;
  for (const auto& s : series) {
    const std::uint64_t o = product_order(h, s);
    if (prev != 0 && o != prev) ++steps;
    prev = o;
  }
  return steps;
}

PermGroup join_groups(const PermGroup& g, const PermGroup& a, const PermGroup& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup(g, std::move(gens));
}

GroupPair quotient_pair(const PermGroup& g, const PermGroup& n, const PermGroup& h) {
  auto q = quotient_action(g, n);
  std::vector<Permutation> gens;
  for (const auto& x : h.generators()) gens.push_back(q.project(x));
  auto image = subgroup(q.group, std::move(gens));
  return group_pair(q.group, std::move(image));
}

BoundEntry absent(std::string note) { return BoundEntry{std::nullopt, std::move(note), false, std::nullopt, std::nullopt}; }

void add_galois(std::map<std::string, BoundEntry>& out, const GroupPair& pair, std::uint64_t ell) {
  if (!is_normal(pair.h, pair.g)) {
    out["delta.galois"] = absent("H is not normal in G");
    out["big_delta.galois"] = absent("H is not normal in G");
    return;
  }
  auto q = quotient_action(pair.g, pair.h).group;
  std::vector<Permutation> order_ell;
  for (const auto& x : q.elements())
    if (element_order(x) == ell) order_ell.push_back(x);
  if (order_ell.empty()) {
    out["delta.galois"] = absent("G/H has no element of order ell");
    out["big_delta.galois"] = absent("G/H has no element of order ell");
    return;
  }
  const std::uint64_t n = order_ell.size() / (ell - 1);
  const std::uint64_t span = subgroup(q, order_ell).order();
  // Equality needs H = 1: a nontrivial normal H can hide every order-ell
  // element of G (C4 over C2 at ell = 2 has delta 0).
  BoundEntry d{whole(1), "H normal; " + std::to_string(n) + " subgroups of order ell in G/H",
               pair.h.order() == 1, true, true};
  BoundEntry b{std::min(whole(n), ratio(span, ell)),
               "min(n, |<order-ell elements>|/ell) with n=" + std::to_string(n) +
                   ", span order " + std::to_string(span),
               false, true, true};
  out["delta.galois"] = d;
  out["big_delta.galois"] = b;
}

void add_semidirect(std::map<std::string, BoundEntry>& out, const GroupPair& pair,
                    std::uint64_t ell, const BoundHints& hints, const DivisibilityOptions& opts) {
  const auto& g = pair.g;
  const auto& h = pair.h;
  std::vector<PermGroup> complements;
  if (hints.complement) {
    const auto& n = *hints.complement;
    if (!is_normal(n, g) || n.order() * h.order() != g.order() || intersection(n, h).order() != 1)
      throw ValidationError("complement hint is not a normal complement of H");
    complements.push_back(n);
  } else {
    try {
      GroupTable t(g);
      SubgroupLattice lattice(t, opts.work_limit);
      const Bitset hb = t.members_of(h);
      for (std::size_t i = 0; i < lattice.subgroups().size(); ++i) {
        const auto& k = lattice.subgroups()[i];
        if (lattice.class_sizes()[lattice.class_ids()[i]] != 1) continue;
        if (k.order * h.order() != g.order() || k.members.count_and(hb) != 1) continue;
        complements.push_back(to_perm_group(t, k));
      }
    } catch (const CapExceeded&) {
      out["delta.semidirect"] = absent("lattice work limit reached while searching complements");
      return;
    }
  }
  if (complements.empty()) {
    out["delta.semidirect"] = absent("H has no normal complement in G");
    return;
  }
  std::optional<std::uint64_t> best;
  std::string note;
  for (const auto& n : complements) {
    auto check = check_semidirect(Action::by_conjugation(g, n, h), ell);
    if (!check.holds) {
      if (note.empty()) note = check.reason;
      continue;
    }
    const std::uint64_t v = std::uint64_t{*check.nil_s} * *check.nil_t + 1;
    if (!best || v < *best) {
      best = v;
      note = "N of order " + std::to_string(n.order()) + ", nil(S)=" +
             std::to_string(*check.nil_s) + ", nil(T)=" + std::to_string(*check.nil_t);
    }
  }
  if (!best) {
    out["delta.semidirect"] = absent(note);
    return;
  }
  out["delta.semidirect"] = BoundEntry{whole(*best), note, false, true, std::nullopt};
}

void add_chain(std::map<std::string, BoundEntry>& out, const GroupPair& pair, std::uint64_t ell,
               const std::vector<PermGroup>& chain, const DivisibilityOptions& opts) {
  if (chain.size() < 2 || !(chain.front() == pair.h) || !(chain.back() == pair.g))
    throw ValidationError("chain hint must run from H to G");
  std::optional<Rational> d = whole(0), b = whole(0);
  std::string d_note, b_note;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!is_subgroup(chain[i - 1], chain[i])) throw ValidationError("chain hint is not increasing");
    auto ev = exact_values(GroupPair{chain[i], chain[i - 1]}, ell, opts);
    if (d && ev.divisible) {
      *d += whole(*ev.delta);
    } else if (d) {
      d.reset();
      d_note = "chain step " + std::to_string(i) + " is not divisible";
    }
    if (b && ev.strongly_divisible) {
      *b += ratio(chain[i - 1].order(), pair.h.order()) * *ev.big_delta;
    } else if (b) {
      b.reset();
      b_note = "chain step " + std::to_string(i) + " is not strongly divisible";
    }
  }
  out["delta.tower"] = d ? BoundEntry{d, "sum over chain steps", false, true, std::nullopt}
                         : absent(d_note);
  out["big_delta.tower"] =
      b ? BoundEntry{b, "weighted sum over chain steps", false, std::nullopt, true} : absent(b_note);
}

void add_normal(std::map<std::string, BoundEntry>& out, const GroupPair& pair, std::uint64_t ell,
                const PermGroup& n, const DivisibilityOptions& opts) {
  if (!is_normal(n, pair.g)) throw ValidationError("normal hint is not normal in G");
  if (is_subgroup(n, pair.h)) {
    auto ev = exact_values(quotient_pair(pair.g, n, pair.h), ell, opts);
    // Order-ell elements of G/N may only lift to elements of larger ell-power
    // order, so for delta the transport is an upper bound, not an equality.
    BoundEntry d{std::nullopt, "quotient by N", false,
                 ev.divisible ? std::optional<bool>(true) : std::nullopt, std::nullopt};
    if (ev.delta) d.value = whole(*ev.delta);
    BoundEntry b{ev.big_delta, "quotient by N", true, std::nullopt, ev.strongly_divisible};
    out["delta.quotient"] = d;
    out["big_delta.quotient"] = b;
  }
  const PermGroup hn = join_groups(pair.g, pair.h, n);
  auto top = exact_values(quotient_pair(pair.g, n, hn), ell, opts);
  auto bottom = exact_values(GroupPair{hn, pair.h}, ell, opts);
  if (top.divisible && bottom.divisible) {
    out["delta.normal_extension"] =
        BoundEntry{whole(*top.delta + *bottom.delta), "delta(G/N over HN/N) + delta(HN/H)", false,
                   true, std::nullopt};
  } else {
    out["delta.normal_extension"] = absent("G/N over HN/N or HN/H is not divisible");
  }
  if (top.strongly_divisible && bottom.strongly_divisible) {
    out["big_delta.normal_extension"] =
        BoundEntry{*bottom.big_delta + ratio(hn.order(), pair.h.order()) * *top.big_delta,
                   "Delta(HN/H) + [HN:H] Delta(G/N over HN/N)", false, std::nullopt, true};
  } else {
    out["big_delta.normal_extension"] = absent("G/N over HN/N or HN/H is not strongly divisible");
  }
}

void add_composite(std::map<std::string, BoundEntry>& out, const GroupPair& pair,
                   std::uint64_t ell, const std::vector<PermGroup>& parts,
                   const DivisibilityOptions& opts) {
  PermGroup meet = pair.g;
  for (const auto& p : parts) {
    if (!is_subgroup(pair.h, p) || !is_subgroup(p, pair.g))
      throw ValidationError("composite hint subgroups must lie between H and G");
    meet = intersection(meet, p);
  }
  if (!(meet == pair.h)) throw ValidationError("composite hint subgroups do not meet in H");
  Rational sum = whole(0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto ev = exact_values(GroupPair{pair.g, parts[i]}, ell, opts);
    if (!ev.divisible) {
      out["delta.composite"] = absent("G/H_" + std::to_string(i + 1) + " is not divisible");
      return;
    }
    sum += whole(*ev.delta);
  }
  out["delta.composite"] = BoundEntry{sum, "sum of delta(G/H_i)", false, true, std::nullopt};
}

void add_restriction(std::map<std::string, BoundEntry>& out, const GroupPair& pair,
                     std::uint64_t ell, const GroupPair& parent, const DivisibilityOptions& opts) {
  if (!is_subgroup(pair.g, parent.g)) throw ValidationError("parent hint does not contain G");
  if (!(intersection(parent.h, pair.g) == pair.h))
    throw ValidationError("parent hint: H is not the intersection of the parent H with G");
  auto ev = exact_values(parent, ell, opts);
  if (!ev.strongly_divisible) {
    out["big_delta.restriction"] = absent("parent pair is not strongly divisible");
    return;
  }
  out["big_delta.restriction"] =
      BoundEntry{ev.big_delta, "Delta of the parent pair", false, std::nullopt, true};
}

void add_factors(std::map<std::string, BoundEntry>& out, const GroupPair& pair, std::uint64_t ell,
                 const std::vector<GroupPair>& factors, const DivisibilityOptions& opts) {
  const std::size_t n = factors.size();
  PermGroup meet_a = factors.front().g, meet_b = factors.front().h;
  for (const auto& f : factors) {
    if (!is_subgroup(f.h, f.g)) throw ValidationError("factor hint pairs need B_i <= A_i");
    meet_a = intersection(meet_a, f.g);
    meet_b = intersection(meet_b, f.h);
  }
  if (!(meet_a == pair.g) || !(meet_b == pair.h))
    throw ValidationError("factor hints must meet in G and H");
  Rational sum = whole(0);
  for (std::size_t i = 0; i < n; ++i) {
    // G^_i = B_1 ... B_i meet A_{i+1} ... A_n (0-based here).
    PermGroup gi = factors[0].h;
    for (std::size_t j = 1; j < n; ++j) gi = intersection(gi, j <= i ? factors[j].h : factors[j].g);
    auto ev = exact_values(factors[i], ell, opts);
    if (!ev.strongly_divisible) {
      out["big_delta.composite_strong"] =
          absent("factor " + std::to_string(i + 1) + " is not strongly divisible");
      return;
    }
    sum += ratio(gi.order(), pair.h.order()) * *ev.big_delta;
  }
  out["big_delta.composite_strong"] =
      BoundEntry{sum, "sum of [G^_i:H] Delta(A_i/B_i)", false, std::nullopt, true};
}

}  // namespace

std::optional<std::uint64_t> sylow_chain_bound(const GroupPair& pair, std::uint64_t ell) {
  const PermGroup s = sylow_subgroup(pair.g, ell);
  if (!is_normal(s, pair.g)) return std::nullopt;
  auto upper = upper_central_series(s).series;
  auto lower = lower_central_series(s).series;
  std::reverse(lower.begin(), lower.end());
  return std::min(count_chain_steps(pair.h, upper), count_chain_steps(pair.h, lower));
}

std::map<std::string, BoundEntry> theorem_bounds(const GroupPair& pair, std::uint64_t ell,
                                                 const BoundHints& hints,
                                                 const DivisibilityOptions& opts) {
  if (!is_prime(ell)) throw ValidationError(std::to_string(ell) + " is not prime");
  std::map<std::string, BoundEntry> out;

  out["delta.generic"] = BoundEntry{whole(1) + ratio(pair.h.order() - 1, ell - 1),
                                    "1 + (|H|-1)/(ell-1), valid when G/H is divisible", false,
                                    std::nullopt, std::nullopt};

  if (auto c = nilpotency_class(pair.g)) {
    out["delta.nilpotent"] = BoundEntry{whole(*c), "nilpotency class of G", false, true, true};
  } else {
    out["delta.nilpotent"] = absent("G is not nilpotent");
  }

  if (auto steps = sylow_chain_bound(pair, ell)) {
    out["delta.sylow_chain"] =
        BoundEntry{whole(*steps), "proper steps in H S_i over a central series of the Sylow subgroup",
                   false, true, true};
  } else {
    out["delta.sylow_chain"] = absent("the Sylow subgroup of G is not normal");
  }

  add_galois(out, pair, ell);
  add_semidirect(out, pair, ell, hints, opts);

  if (!hints.chain.empty()) add_chain(out, pair, ell, hints.chain, opts);
  if (hints.normal) add_normal(out, pair, ell, *hints.normal, opts);
  if (!hints.composite.empty()) add_composite(out, pair, ell, hints.composite, opts);
  if (hints.parent) add_restriction(out, pair, ell, *hints.parent, opts);
  if (!hints.factors.empty()) add_factors(out, pair, ell, hints.factors, opts);
  return out;
}

std::vector<std::string> check_bounds(const std::map<std::string, BoundEntry>& bounds,
                                      const ExactValues& exact) {
  std::vector<std::string> out;
  for (const auto& [name, entry] : bounds) {
    if (entry.claims_divisible && *entry.claims_divisible != exact.divisible)
      out.push_back(name + ": divisibility claim disagrees with exact search");
    if (entry.claims_strong && *entry.claims_strong != exact.strongly_divisible)
      out.push_back(name + ": strong divisibility claim disagrees with exact search");
    if (!entry.value) continue;
    const bool big = name.rfind("big_delta.", 0) == 0;
    std::optional<Rational> actual;
    if (big && exact.big_delta) actual = *exact.big_delta;
    if (!big && exact.delta) actual = whole(*exact.delta);
    if (!actual) continue;
    if (entry.equality ? *actual != *entry.value : *actual > *entry.value)
      out.push_back(name + ": exact value " + to_string(*actual) +
                    (entry.equality ? " differs from " : " exceeds bound ") +
                    to_string(*entry.value));
  }
  return out;
}

}  // namespace lattdiv
