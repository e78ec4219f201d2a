#include "ldiv/constructors.hpp"

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

void require_positive(std::uint64_t n) {
  if (n < 1) throw ValidationError("group parameter must be at least 1");
}

Permutation from_images(std::vector<Point> images) { return Permutation(std::move(images)); }

Permutation cycle(std::size_t degree, std::vector<Point> points) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < points.size(); ++i) img[points[i]] = points[(i + 1) % points.size()];
  return from_images(std::move(img));
}

Permutation shifted(const Permutation& p, std::size_t offset, std::size_t degree) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < p.degree(); ++i)
    img[i + offset] = static_cast<Point>(p[static_cast<Point>(i)] + offset);
  return from_images(std::move(img));
}

}  // namespace

Permutation dihedral_rotation(std::uint64_t n) {
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<Point>(i);
  return cycle(n, pts);
}

Permutation dihedral_reflection(std::uint64_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((n - i) % n);
  return from_images(std::move(img));
}

PermGroup cyclic_group(std::uint64_t n) {
  require_positive(n);
  return PermGroup::generate(n, {dihedral_rotation(n)});
}

PermGroup dihedral_group(std::uint64_t n) {
  require_positive(n);
  if (n == 1) return PermGroup::generate(2, {cycle(2, {0, 1})});
  if (n == 2)
    return PermGroup::generate(4, {Permutation::from_cycles("(1 2)(3 4)", 4),
                                   Permutation::from_cycles("(1 3)(2 4)", 4)});
  return PermGroup::generate(n, {dihedral_rotation(n), dihedral_reflection(n)});
}

PermGroup symmetric_group(std::uint64_t n, std::size_t cap) {
  require_positive(n);
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle(n, {0, 1}));
  if (n >= 3) gens.push_back(dihedral_rotation(n));
  return PermGroup::generate(n, std::move(gens), cap);
}

PermGroup alternating_group(std::uint64_t n, std::size_t cap) {
  require_positive(n);
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(cycle(n, {0, 1, i}));
  return PermGroup::generate(n, std::move(gens), cap);
}

PermGroup quaternion_group() {
  return PermGroup::generate(8, {Permutation::from_cycles("(1 2 3 4)(5 6 7 8)", 8),
                                 Permutation::from_cycles("(1 5 3 7)(2 8 4 6)", 8)});
}

PermGroup named_group(Family family, std::uint64_t n, std::size_t cap) {
  switch (family) {
    case Family::cyclic:
      return cyclic_group(n);
    case Family::dihedral:
      return dihedral_group(n);
    case Family::symmetric:
      return symmetric_group(n, cap);
    case Family::alternating:
      return alternating_group(n, cap);
  }
  throw ValidationError("unknown group family");
}

Family parse_family(std::string_view name) {
  if (name == "C" || name == "cyclic") return Family::cyclic;
  if (name == "D" || name == "dihedral") return Family::dihedral;
  if (name == "S" || name == "symmetric") return Family::symmetric;
  if (name == "A" || name == "alternating") return Family::alternating;
  throw ValidationError("unknown group family '" + std::string(name) + "'");
}

GroupPair dihedral_pair(std::uint64_t n) {
  if (n < 3) throw ValidationError("dihedral pair needs n >= 3");
  auto g = dihedral_group(n);
  auto h = PermGroup::generate(n, {dihedral_reflection(n)});
  return group_pair(std::move(g), std::move(h));
}

namespace {

GroupPair klein_pair(std::size_t degree, PermGroup g) {
  auto h = PermGroup::generate(degree, {Permutation::from_cycles("(1 2)(3 4)", degree),
                                        Permutation::from_cycles("(1 3)(2 4)", degree)});
  return group_pair(std::move(g), std::move(h));
}

}  // namespace

GroupPair klein_in_s5_pair() { return klein_pair(5, symmetric_group(5)); }
GroupPair klein_in_s4_pair() { return klein_pair(4, symmetric_group(4)); }

PermGroup direct_product(const PermGroup& a, const PermGroup& b, std::size_t cap) {
  const std::size_t degree = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (const auto& x : a.generators()) gens.push_back(shifted(x, 0, degree));
  for (const auto& x : b.generators()) gens.push_back(shifted(x, a.degree(), degree));
  return PermGroup::generate(degree, std::move(gens), cap);
}

SemidirectProduct::SemidirectProduct(const ActionSpec& spec, std::size_t cap)
    : action_(Action::from_spec(spec)), regular_(!action_.faithful()) {
  std::vector<Permutation> gens;
  for (const auto& x : action_.n().generators()) gens.push_back(embed_n(x));
  for (const auto& x : action_.h().generators()) gens.push_back(embed_h(x));
  const std::size_t degree =
      action_.n().elements().size() * (regular_ ? action_.h().elements().size() : 1);
  group_ = PermGroup::generate(degree, std::move(gens), cap);
}

Permutation SemidirectProduct::embed_n(const Permutation& n) const {
  const auto& ne = action_.n().elements();
  const std::size_t m = ne.size();
  const std::size_t k = regular_ ? action_.h().elements().size() : 1;
  std::vector<Point> img(m * k);
  for (std::size_t x = 0; x < m; ++x) {
    auto p = action_.n().position(n * ne[x]);
    if (!p) throw ValidationError("element is not in N");
    for (std::size_t y = 0; y < k; ++y) img[x * k + y] = static_cast<Point>(*p * k + y);
  }
  return from_images(std::move(img));
}

Permutation SemidirectProduct::embed_h(const Permutation& h) const {
  const auto& he = action_.h().elements();
  const std::size_t m = action_.n().elements().size();
  const std::size_t k = regular_ ? he.size() : 1;
  const Permutation& phi = action_.phi_of(h);
  std::vector<Point> img(m * k);
  for (std::size_t y = 0; y < k; ++y) {
    const std::size_t hy = regular_ ? *action_.h().position(h * he[y]) : 0;
    for (std::size_t x = 0; x < m; ++x)
      img[x * k + y] = static_cast<Point>(phi[static_cast<Point>(x)] * k + hy);
  }
  return from_images(std::move(img));
}

PermGroup SemidirectProduct::n_image() const {
  std::vector<Permutation> gens;
  for (const auto& x : action_.n().generators()) gens.push_back(embed_n(x));
  return subgroup(group_, std::move(gens));
}

PermGroup SemidirectProduct::h_image() const {
  std::vector<Permutation> gens;
  for (const auto& x : action_.h().generators()) gens.push_back(embed_h(x));
  return subgroup(group_, std::move(gens));
}

SemidirectProduct semidirect_product(const ActionSpec& spec) { return SemidirectProduct(spec); }

ActionSpec cyclic_action(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  auto cn = cyclic_group(n);
  auto cm = cyclic_group(m);
  ActionSpec spec{cn, cm, {}};
  const auto r = dihedral_rotation(n);
  for (std::size_t i = 0; i < cm.generators().size(); ++i)
    spec.h_generators.push_back({r.pow(static_cast<std::int64_t>(k % n))});
  if (cn.generators().empty()) spec.h_generators.assign(cm.generators().size(), {});
  return spec;
}

}  // namespace lattdiv
