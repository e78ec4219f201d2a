#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ldiv/permutation.hpp"

namespace lattdiv {

inline constexpr std::size_t kDefaultElementCap = 200'000;

/// A finite permutation group held by its full, lexicographically sorted
/// element list. Two groups of equal degree compare equal iff their element
/// sets coincide, whatever generators produced them.
class PermGroup {
 public:
  PermGroup() = default;

  /// Closure of `gens` under composition. Throws ValidationError on a degree
  /// mismatch and CapExceeded once the closure passes `element_cap`.
  static PermGroup generate(std::size_t degree, std::vector<Permutation> gens,
                            std::size_t element_cap = kDefaultElementCap);

  static PermGroup trivial(std::size_t degree);

  /// Wraps a set already known to be a group. `sorted_elements` must be sorted
  /// and closed; only cheap consistency checks are made.
  static PermGroup from_closed_set(std::size_t degree, std::vector<Permutation> gens,
                                   std::vector<Permutation> sorted_elements);

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& identity() const { return elements_.front(); }

  /// Throws ValidationError on a degree mismatch.
  bool contains(const Permutation& a) const;

  /// Position of `a` in elements(), if present.
  std::optional<std::size_t> position(const Permutation& a) const;

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

bool contains(const PermGroup& g, const Permutation& a);

/// Wraps a sorted member list known to form a group, choosing a short
/// generating set greedily in member order.
PermGroup group_from_members(std::size_t degree, std::vector<Permutation> sorted_members);

/// True iff every element of `h` lies in `g` (same degree required).
bool is_subgroup(const PermGroup& h, const PermGroup& g);
bool is_normal(const PermGroup& n, const PermGroup& g);

/// Orbit of `a` under conjugation by `g`, sorted. Throws if a is not in g.
std::vector<Permutation> conjugacy_class_of(const PermGroup& g, const Permutation& a);

/// All classes, ordered by their least member.
std::vector<std::vector<Permutation>> conjugacy_classes(const PermGroup& g);

/// Elements whose order is ell^k for some k >= 1, sorted.
std::vector<Permutation> elements_of_order_power(const PermGroup& g, std::uint64_t ell);

PermGroup normalizer(const PermGroup& g, const PermGroup& h);
PermGroup center(const PermGroup& g);
PermGroup intersection(const PermGroup& a, const PermGroup& b);

/// Subgroup of `g` generated by `gens` (elements of g).
PermGroup subgroup(const PermGroup& g, std::vector<Permutation> gens);

/// Smallest normal subgroup of g containing `gens`.
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& gens);

/// [A, B] for subgroups A, B of g with B normal in g.
PermGroup commutator_subgroup(const PermGroup& g, const PermGroup& a, const PermGroup& b);

/// A Sylow ell-subgroup, grown from the least ell-element through normalizers.
/// Trivial if ell does not divide |g|. Throws ValidationError if ell is not prime.
PermGroup sylow_subgroup(const PermGroup& g, std::uint64_t ell);

/// True iff the Sylow ell-subgroup of g is normal (equivalently unique).
bool has_normal_sylow(const PermGroup& g, std::uint64_t ell);

struct CentralSeries {
  std::vector<PermGroup> series;
  std::optional<unsigned> nilpotency_class;
};

/// G = g_1 >= [G,G] >= [G,g_2] >= ... until it stabilizes.
CentralSeries lower_central_series(const PermGroup& g);

/// 1 = Z_0 <= Z_1 = Z(G) <= Z_2 <= ... until it stabilizes.
CentralSeries upper_central_series(const PermGroup& g);

std::optional<unsigned> nilpotency_class(const PermGroup& g);

/// Left multiplication of g on the left cosets of h. Cosets are keyed by their
/// least member and numbered in key order.
class CosetAction {
 public:
  CosetAction(const PermGroup& g, const PermGroup& h);

  std::size_t coset_count() const { return keys_.size(); }
  const std::vector<Permutation>& keys() const { return keys_; }
  std::size_t coset_of(const Permutation& x) const;

  /// The permutation of coset indices induced by x in g.
  Permutation act(const Permutation& x) const;

 private:
  std::vector<Permutation> keys_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
};

struct Quotient {
  PermGroup group;
  CosetAction cosets;
  Permutation project(const Permutation& x) const { return cosets.act(x); }
};

/// G/N realized on the left cosets of N. Throws if n is not a normal subgroup.
Quotient quotient_action(const PermGroup& g, const PermGroup& n);

/// Number of <sigma>-orbits on the left cosets of h in g.
std::size_t coset_orbit_count(const PermGroup& g, const PermGroup& h, const Permutation& sigma);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Largest power of ell dividing n.
std::uint64_t prime_part(std::uint64_t n, std::uint64_t ell);

}  // namespace lattdiv
