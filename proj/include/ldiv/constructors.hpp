#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ldiv/action.hpp"
#include "ldiv/divisibility.hpp"
#include "ldiv/permgroup.hpp"

namespace lattdiv {

enum class Family { cyclic, dihedral, symmetric, alternating };

/// cyclic(n) on n points; dihedral(n) of order 2n on n points for n >= 3 and
/// regular for n = 1, 2; symmetric(n) and alternating(n) on n points.
/// Throws ValidationError for n < 1 and CapExceeded past `cap`.
PermGroup named_group(Family family, std::uint64_t n, std::size_t cap = kDefaultElementCap);
Family parse_family(std::string_view name);

PermGroup cyclic_group(std::uint64_t n);
PermGroup dihedral_group(std::uint64_t n);
PermGroup symmetric_group(std::uint64_t n, std::size_t cap = kDefaultElementCap);
PermGroup alternating_group(std::uint64_t n, std::size_t cap = kDefaultElementCap);

/// Quaternion group of order 8 in its regular representation.
PermGroup quaternion_group();

/// r = (0 1 ... n-1) and s: x -> -x mod n.
Permutation dihedral_rotation(std::uint64_t n);
Permutation dihedral_reflection(std::uint64_t n);

/// D_n over <s>, n >= 3.
GroupPair dihedral_pair(std::uint64_t n);

/// H = <(0 1)(2 3), (0 2)(1 3)> inside S_5, respectively S_4.
GroupPair klein_in_s5_pair();
GroupPair klein_in_s4_pair();

/// A on points 0..deg(A)-1 and B on the following deg(B) points.
PermGroup direct_product(const PermGroup& a, const PermGroup& b,
                         std::size_t cap = kDefaultElementCap);

/// N x| H realized on the elements of N when phi is faithful, otherwise on
/// N x H by left multiplication.
class SemidirectProduct {
 public:
  explicit SemidirectProduct(const ActionSpec& spec, std::size_t cap = kDefaultElementCap);

  const PermGroup& group() const { return group_; }
  const Action& action() const { return action_; }
  bool regular() const { return regular_; }

  Permutation embed_n(const Permutation& n) const;
  Permutation embed_h(const Permutation& h) const;
  PermGroup n_image() const;
  PermGroup h_image() const;

 private:
  Action action_;
  bool regular_;
  PermGroup group_;
};

SemidirectProduct semidirect_product(const ActionSpec& spec);

/// C_n x| C_m with the generator of C_m acting by r -> r^k.
ActionSpec cyclic_action(std::uint64_t n, std::uint64_t m, std::uint64_t k);

}  // namespace lattdiv
