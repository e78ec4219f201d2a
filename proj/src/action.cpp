#include "ldiv/action.hpp"

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

std::size_t position_in(const PermGroup& g, const Permutation& x, const char* what) {
  auto p = g.position(x);
  if (!p) throw ValidationError(std::string(what) + " " + x.to_cycle_string() + " is not in N");
  return *p;
}

// Extends generator images to a map on all of N, checking it is a
// homomorphism (f(x s) = f(x) f(s) on every edge of the Cayley graph) and a
// bijection. Returns the map on positions.
Permutation extend_automorphism(const PermGroup& n, const std::vector<Permutation>& gen_images) {
  const auto& gens = n.generators();
  if (gen_images.size() != gens.size())
    throw ValidationError("expected " + std::to_string(gens.size()) +
                          " generator images for N, got " + std::to_string(gen_images.size()));
  const std::size_t size = n.elements().size();
  std::vector<Permutation> image(size);
  std::vector<bool> known(size, false);
  std::vector<std::size_t> queue{0};
  image[0] = n.identity();
  known[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t x = queue[qi];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const std::size_t y = position_in(n, n.elements()[x] * gens[j], "element");
      Permutation fy = image[x] * gen_images[j];
      if (!known[y]) {
        known[y] = true;
        image[y] = std::move(fy);
        queue.push_back(y);
      } else if (image[y] != fy) {
        throw ValidationError("generator images do not define a homomorphism of N");
      }
    }
  }
  std::vector<Point> positions(size);
  std::vector<bool> hit(size, false);
  for (std::size_t x = 0; x < size; ++x) {
    const std::size_t p = position_in(n, image[x], "image");
    if (hit[p]) throw ValidationError("generator images do not define a bijection of N");
    hit[p] = true;
    positions[x] = static_cast<Point>(p);
  }
  return Permutation(std::move(positions));
}

}  // namespace

Action Action::from_spec(const ActionSpec& spec) {
  const auto& hg = spec.h_group;
  if (spec.h_generators.size() != hg.generators().size())
    throw ValidationError("expected one automorphism per generator of H");
  std::vector<Permutation> alpha;
  for (const auto& imgs : spec.h_generators) alpha.push_back(extend_automorphism(spec.n_group, imgs));

  Action a;
  a.n_ = spec.n_group;
  a.h_ = hg;
  const std::size_t size = hg.elements().size();
  a.images_.assign(size, Permutation());
  std::vector<bool> known(size, false);
  std::vector<std::size_t> queue{0};
  a.images_[0] = Permutation::identity(spec.n_group.elements().size());
  known[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t x = queue[qi];
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const std::size_t y = *hg.position(hg.elements()[x] * hg.generators()[i]);
      Permutation fy = a.images_[x] * alpha[i];
      if (!known[y]) {
        known[y] = true;
        a.images_[y] = std::move(fy);
        queue.push_back(y);
      } else if (a.images_[y] != fy) {
        throw ValidationError("action does not respect the relations of H");
      }
    }
  }
  return a;
}

Action Action::by_conjugation(const PermGroup& g, const PermGroup& n, const PermGroup& h) {
  if (!is_subgroup(n, g) || !is_subgroup(h, g)) throw ValidationError("N and H must lie in G");
  Action a;
  a.n_ = n;
  a.h_ = h;
  for (const auto& x : h.elements()) {
    std::vector<Point> positions;
    positions.reserve(n.elements().size());
    for (const auto& y : n.elements()) {
      auto p = n.position(conjugate(x, y));
      if (!p) throw ValidationError("H does not normalize N");
      positions.push_back(static_cast<Point>(*p));
    }
    a.images_.emplace_back(std::move(positions));
  }
  return a;
}

const Permutation& Action::phi_of(const Permutation& h) const {
  auto p = h_.position(h);
  if (!p) throw ValidationError("element is not in H");
  return images_[*p];
}

const Permutation& Action::apply(const Permutation& h, const Permutation& x) const {
  auto p = n_.position(x);
  if (!p) throw ValidationError("element is not in N");
  return n_.elements()[phi_of(h)[static_cast<Point>(*p)]];
}

bool Action::faithful() const {
  for (std::size_t i = 1; i < images_.size(); ++i)
    if (images_[i].is_identity()) return false;
  return true;
}

PermGroup Action::image() const {
  std::vector<Permutation> gens;
  for (const auto& s : h_.generators()) gens.push_back(phi_of(s));
  return PermGroup::generate(n_.elements().size(), std::move(gens));
}

SemidirectCheck check_semidirect(const Action& action, std::uint64_t ell) {
  if (!is_prime(ell)) throw ValidationError(std::to_string(ell) + " is not prime");
  SemidirectCheck out;
  const PermGroup phi_h = action.image();
  const PermGroup s = sylow_subgroup(phi_h, ell);
  if (!is_normal(s, phi_h)) {
    out.reason = "phi(H) has more than one Sylow subgroup";
    return out;
  }
  const PermGroup t = sylow_subgroup(action.n(), ell);
  if (!is_normal(t, action.n())) {
    out.reason = "N has more than one Sylow subgroup";
    return out;
  }
  std::vector<Point> t_positions;
  for (const auto& x : t.elements()) t_positions.push_back(static_cast<Point>(*action.n().position(x)));
  for (const auto& sigma : s.elements()) {
    if (sigma.is_identity()) continue;
    bool moves_t = false;
    for (Point p : t_positions) moves_t = moves_t || sigma[p] != p;
    if (!moves_t) {
      out.reason = "a nontrivial element of S restricts to the identity on T";
      return out;
    }
  }
  out.holds = true;
  out.nil_s = nilpotency_class(s);
  out.nil_t = nilpotency_class(t);
  return out;
}

bool semidirect_hypothesis(const ActionSpec& spec, std::uint64_t ell) {
  return check_semidirect(Action::from_spec(spec), ell).holds;
}

}  // namespace lattdiv
