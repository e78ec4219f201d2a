#include "ldiv/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

void check_degree(std::size_t expected, const Permutation& p, const char* what) {
  if (p.degree() != expected)
    throw ValidationError(std::string(what) + ": degree " + std::to_string(p.degree()) +
                          " does not match group degree " + std::to_string(expected));
}

// Drops identities and duplicates, keeping first occurrences.
std::vector<Permutation> clean_generators(std::vector<Permutation> gens) {
  std::vector<Permutation> out;
  for (auto& g : gens) {
    if (g.is_identity()) continue;
    if (std::find(out.begin(), out.end(), g) != out.end()) continue;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

PermGroup group_from_members(std::size_t degree, std::vector<Permutation> sorted_members) {
  std::vector<Permutation> gens;
  std::unordered_set<Permutation, PermutationHash> reached;
  reached.insert(Permutation::identity(degree));
  for (const auto& x : sorted_members) {
    if (reached.contains(x)) continue;
    gens.push_back(x);
    PermGroup partial = PermGroup::generate(degree, gens, sorted_members.size());
    reached.insert(partial.elements().begin(), partial.elements().end());
  }
  if (reached.size() != sorted_members.size())
    throw InternalError("member set is not closed under multiplication");
  return PermGroup::from_closed_set(degree, std::move(gens), std::move(sorted_members));
}

PermGroup PermGroup::generate(std::size_t degree, std::vector<Permutation> gens,
                              std::size_t element_cap) {
  if (degree == 0) throw ValidationError("degree must be positive");
  for (const auto& g : gens) check_degree(degree, g, "generator");
  gens = clean_generators(std::move(gens));

  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  elements.push_back(id);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& s : gens) {
      Permutation y = s * elements[i];
      if (seen.insert(y).second) {
        if (elements.size() >= element_cap)
          throw CapExceeded("group order exceeds element cap of " + std::to_string(element_cap));
        elements.push_back(std::move(y));
      }
    }
  }
  std::sort(elements.begin(), elements.end());

  PermGroup g;
  g.degree_ = degree;
  g.generators_ = std::move(gens);
  g.elements_ = std::move(elements);
  return g;
}

PermGroup PermGroup::trivial(std::size_t degree) { return generate(degree, {}); }

PermGroup PermGroup::from_closed_set(std::size_t degree, std::vector<Permutation> gens,
                                     std::vector<Permutation> sorted_elements) {
  if (sorted_elements.empty() || !sorted_elements.front().is_identity() ||
      sorted_elements.front().degree() != degree)
    throw InternalError("closed set must start with the identity of the right degree");
  PermGroup g;
  g.degree_ = degree;
  g.generators_ = clean_generators(std::move(gens));
  g.elements_ = std::move(sorted_elements);
  return g;
}

std::optional<std::size_t> PermGroup::position(const Permutation& a) const {
  check_degree(degree_, a, "element");
  auto it = std::lower_bound(elements_.begin(), elements_.end(), a);
  if (it == elements_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool PermGroup::contains(const Permutation& a) const { return position(a).has_value(); }

bool contains(const PermGroup& g, const Permutation& a) { return g.contains(a); }

bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) throw ValidationError("degree mismatch between groups");
  if (g.order() % h.order() != 0) return false;
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [&](const Permutation& x) { return g.contains(x); });
}

bool is_normal(const PermGroup& n, const PermGroup& g) {
  if (!is_subgroup(n, g)) return false;
  for (const auto& s : g.generators())
    for (const auto& x : n.generators())
      if (!n.contains(conjugate(s, x))) return false;
  return true;
}

std::vector<Permutation> conjugacy_class_of(const PermGroup& g, const Permutation& a) {
  if (!g.contains(a)) throw ValidationError("element is not in the group");
  std::unordered_set<Permutation, PermutationHash> seen{a};
  std::vector<Permutation> orbit{a};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation y = conjugate(s, orbit[i]);
      if (seen.insert(y).second) orbit.push_back(std::move(y));
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<Permutation>> conjugacy_classes(const PermGroup& g) {
  std::vector<std::vector<Permutation>> classes;
  std::vector<bool> done(g.order(), false);
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (done[i]) continue;
    auto cls = conjugacy_class_of(g, g.elements()[i]);
    for (const auto& x : cls) done[*g.position(x)] = true;
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t prime_part(std::uint64_t n, std::uint64_t ell) {
  std::uint64_t part = 1;
  while (n > 0 && n % ell == 0) {
    n /= ell;
    part *= ell;
  }
  return part;
}

namespace {

bool is_power_of(std::uint64_t m, std::uint64_t ell) {
  if (m < ell) return false;
  while (m % ell == 0) m /= ell;
  return m == 1;
}

void require_prime(std::uint64_t ell) {
  if (!is_prime(ell)) throw ValidationError(std::to_string(ell) + " is not prime");
}

}  // namespace

std::vector<Permutation> elements_of_order_power(const PermGroup& g, std::uint64_t ell) {
  require_prime(ell);
  std::vector<Permutation> out;
  for (const auto& x : g.elements())
    if (is_power_of(element_order(x), ell)) out.push_back(x);
  return out;
}

PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens) {
  for (const auto& x : gens)
    if (!g.contains(x)) throw ValidationError("generator is not in the ambient group");
  return PermGroup::generate(g.degree(), std::move(gens), g.order());
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
  std::vector<Permutation> members;
  for (const auto& x : g.elements()) {
    bool ok = std::all_of(h.generators().begin(), h.generators().end(),
                          [&](const Permutation& y) { return h.contains(conjugate(x, y)); });
    if (ok) members.push_back(x);
  }
  return group_from_members(g.degree(), std::move(members));
}

PermGroup center(const PermGroup& g) {
  std::vector<Permutation> members;
  for (const auto& x : g.elements()) {
    bool ok = std::all_of(g.generators().begin(), g.generators().end(),
                          [&](const Permutation& s) { return s * x == x * s; });
    if (ok) members.push_back(x);
  }
  return group_from_members(g.degree(), std::move(members));
}

PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw ValidationError("degree mismatch between groups");
  std::vector<Permutation> members;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(members));
  return group_from_members(a.degree(), std::move(members));
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens) {
  std::vector<Permutation> pool = gens;
  PermGroup current = subgroup(g, pool);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Permutation> extra;
    for (const auto& s : g.generators())
      for (const auto& x : current.generators()) {
        Permutation y = conjugate(s, x);
        if (!current.contains(y)) extra.push_back(std::move(y));
      }
    if (!extra.empty()) {
      pool.insert(pool.end(), extra.begin(), extra.end());
      current = subgroup(g, pool);
      grew = true;
    }
  }
  return current;
}

PermGroup commutator_subgroup(const PermGroup& g, const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> comms;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) {
      Permutation c = x * y * x.inverse() * y.inverse();
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure(g, comms);
}

PermGroup sylow_subgroup(const PermGroup& g, std::uint64_t ell) {
  require_prime(ell);
  const std::uint64_t target = prime_part(g.order(), ell);
  if (target == 1) return PermGroup::trivial(g.degree());

  auto candidates = elements_of_order_power(g, ell);
  PermGroup p = subgroup(g, {candidates.front()});
  while (p.order() < target) {
    PermGroup norm = normalizer(g, p);
    const Permutation* step = nullptr;
    for (const auto& x : norm.elements()) {
      if (p.contains(x)) continue;
      if (p.contains(x.pow(static_cast<std::int64_t>(ell)))) {
        step = &x;
        break;
      }
    }
    if (step == nullptr) throw InternalError("normalizer ascent stalled below the Sylow order");
    auto gens = p.generators();
    gens.push_back(*step);
    p = subgroup(g, std::move(gens));
  }
  if (p.order() != target) throw InternalError("Sylow ascent overshot");
  return p;
}

bool has_normal_sylow(const PermGroup& g, std::uint64_t ell) {
  return is_normal(sylow_subgroup(g, ell), g);
}

CentralSeries lower_central_series(const PermGroup& g) {
  CentralSeries out;
  out.series.push_back(g);
  while (true) {
    const PermGroup& last = out.series.back();
    if (last.order() == 1) {
      out.nilpotency_class = static_cast<unsigned>(out.series.size() - 1);
      return out;
    }
    PermGroup next = commutator_subgroup(g, g, last);
    if (next == last) return out;
    out.series.push_back(std::move(next));
  }
}

CentralSeries upper_central_series(const PermGroup& g) {
  CentralSeries out;
  out.series.push_back(PermGroup::trivial(g.degree()));
  while (true) {
    const PermGroup& last = out.series.back();
    if (last.order() == g.order()) {
      out.nilpotency_class = static_cast<unsigned>(out.series.size() - 1);
      return out;
    }
    // Z_{i+1} = { x : [x, s] in Z_i for every generator s }.
    std::vector<Permutation> members;
    for (const auto& x : g.elements()) {
      bool ok = std::all_of(g.generators().begin(), g.generators().end(), [&](const Permutation& s) {
        return last.contains(x * s * x.inverse() * s.inverse());
      });
      if (ok) members.push_back(x);
    }
    PermGroup next = group_from_members(g.degree(), std::move(members));
    if (next == last) return out;
    out.series.push_back(std::move(next));
  }
}

std::optional<unsigned> nilpotency_class(const PermGroup& g) {
  return lower_central_series(g).nilpotency_class;
}

CosetAction::CosetAction(const PermGroup& g, const PermGroup& h) {
  if (!is_subgroup(h, g)) throw ValidationError("coset action needs a subgroup");
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> key_of;
  std::vector<bool> done(g.order(), false);
  std::vector<std::vector<std::size_t>> members;
  // Elements are visited in sorted order, so the first member met in each
  // coset is its least element.
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (done[i]) continue;
    const Permutation& x = g.elements()[i];
    keys_.push_back(x);
    std::vector<std::size_t> coset;
    for (const auto& y : h.elements()) {
      std::size_t j = *g.position(x * y);
      done[j] = true;
      coset.push_back(j);
    }
    members.push_back(std::move(coset));
  }
  for (std::uint32_t c = 0; c < members.size(); ++c)
    for (std::size_t j : members[c]) index_.emplace(g.elements()[j], c);
}

std::size_t CosetAction::coset_of(const Permutation& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw ValidationError("element is not in the acting group");
  return it->second;
}

Permutation CosetAction::act(const Permutation& x) const {
  std::vector<Point> images(keys_.size());
  for (std::size_t c = 0; c < keys_.size(); ++c)
    images[c] = static_cast<Point>(coset_of(x * keys_[c]));
  return Permutation(std::move(images));
}

Quotient quotient_action(const PermGroup& g, const PermGroup& n) {
  if (!is_subgroup(n, g)) throw ValidationError("N is not a subgroup of G");
  if (!is_normal(n, g)) throw ValidationError("N is not normal in G");
  CosetAction cosets(g, n);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(cosets.act(s));
  PermGroup q = PermGroup::generate(cosets.coset_count(), std::move(gens), g.order());
  return Quotient{std::move(q), std::move(cosets)};
}

std::size_t coset_orbit_count(const PermGroup& g, const PermGroup& h, const Permutation& sigma) {
  if (!g.contains(sigma)) throw ValidationError("sigma is not in G");
  return CosetAction(g, h).act(sigma).orbit_count();
}

}  // namespace lattdiv
