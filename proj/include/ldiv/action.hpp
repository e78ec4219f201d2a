#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldiv/permgroup.hpp"

namespace lattdiv {

/// phi: H -> Aut(N) given on generators. h_generators[i][j] is the image under
/// phi(H.generators()[i]) of N.generators()[j].
struct ActionSpec {
  PermGroup n_group;
  PermGroup h_group;
  std::vector<std::vector<Permutation>> h_generators;
};

/// A validated action of H on N. Each phi(h) is stored as a permutation of
/// the positions of N's sorted element list.
class Action {
 public:
  /// Throws ValidationError if a generator map does not extend to an
  /// automorphism of N or the assignment does not respect H's relations.
  static Action from_spec(const ActionSpec& spec);

  /// h acting on a normal subgroup n of g by x -> h x h^-1.
  static Action by_conjugation(const PermGroup& g, const PermGroup& n, const PermGroup& h);

  const PermGroup& n() const { return n_; }
  const PermGroup& h() const { return h_; }

  /// phi(h) on N positions, h given by its position in h().elements().
  const Permutation& phi(std::size_t h_index) const { return images_[h_index]; }
  const Permutation& phi_of(const Permutation& h) const;

  /// phi(h)(x) for x in N.
  const Permutation& apply(const Permutation& h, const Permutation& x) const;

  /// Kernel of phi is trivial.
  bool faithful() const;

  /// phi(H) as a permutation group on N positions.
  PermGroup image() const;

 private:
  PermGroup n_;
  PermGroup h_;
  std::vector<Permutation> images_;
};

struct SemidirectCheck {
  bool holds = false;
  std::string reason;
  std::optional<unsigned> nil_s;
  std::optional<unsigned> nil_t;
};

/// phi(H) and N have unique Sylow ell-subgroups S and T and restricting S to
/// T is injective.
SemidirectCheck check_semidirect(const Action& action, std::uint64_t ell);
bool semidirect_hypothesis(const ActionSpec& spec, std::uint64_t ell);

}  // namespace lattdiv
