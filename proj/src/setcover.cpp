#include "ldiv/setcover.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "ldiv/error.hpp"

namespace lattdiv {

namespace {

constexpr std::uint64_t kScale = std::uint64_t{1} << 20;

struct Instance {
  std::size_t universe;
  std::vector<Bitset> masks;
  std::vector<std::uint64_t> weights;
  std::vector<std::size_t> origin;
  std::vector<std::vector<std::size_t>> covering;  // element -> candidates
};

Instance reduce(std::size_t universe, const std::vector<Bitset>& masks,
                const std::vector<std::uint64_t>& weights) {
  std::unordered_map<Bitset, std::size_t, BitsetHash> best;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i].none()) continue;
    auto [it, fresh] = best.emplace(masks[i], i);
    if (fresh) {
      order.push_back(i);
    } else if (weights[i] < weights[it->second]) {
      it->second = i;
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t i : order) kept.push_back(best.at(masks[i]));
  std::sort(kept.begin(), kept.end());

  Instance inst{universe, {}, {}, {}, {}};
  for (std::size_t a : kept) {
    bool dominated = false;
    for (std::size_t b : kept) {
      if (a == b || weights[b] > weights[a]) continue;
      if (masks[a].is_subset_of(masks[b])) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    inst.masks.push_back(masks[a]);
    inst.weights.push_back(weights[a]);
    inst.origin.push_back(a);
  }
  inst.covering.resize(universe);
  for (std::size_t i = 0; i < inst.masks.size(); ++i)
    inst.masks[i].for_each([&](std::size_t e) { inst.covering[e].push_back(i); });
  return inst;
}

class Search {
 public:
  Search(const Instance& inst, std::uint64_t node_limit)
      : inst_(inst), node_limit_(node_limit), forbidden_(inst.masks.size()) {}

  void run(std::uint64_t incumbent, std::vector<std::size_t> incumbent_set) {
    best_ = incumbent;
    best_set_ = std::move(incumbent_set);
    Bitset all(inst_.universe);
    for (std::size_t e = 0; e < inst_.universe; ++e) all.set(e);
    dfs(all, 0);
  }

  std::uint64_t best() const { return best_; }
  const std::vector<std::size_t>& best_set() const { return best_set_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void dfs(const Bitset& uncovered, std::uint64_t cost) {
    if (++nodes_ > node_limit_)
      throw CapExceeded("set cover search exceeded " + std::to_string(node_limit_) + " nodes");
    if (uncovered.none()) {
      if (cost < best_) {
        best_ = cost;
        best_set_ = stack_;
      }
      return;
    }

    // Each uncovered element pays at least the cheapest per-element rate of
    // any allowed candidate covering it.
    std::uint64_t bound = 0;
    std::size_t branch = inst_.universe;
    std::size_t branch_width = std::numeric_limits<std::size_t>::max();
    bool dead = false;
    uncovered.for_each([&](std::size_t e) {
      if (dead) return;
      std::uint64_t rate = std::numeric_limits<std::uint64_t>::max();
      std::size_t width = 0;
      for (std::size_t i : inst_.covering[e]) {
        if (forbidden_.test(i)) continue;
        ++width;
        const std::uint64_t c = inst_.masks[i].count_and(uncovered);
        rate = std::min(rate, inst_.weights[i] * kScale / c);
      }
      if (width == 0) {
        dead = true;
        return;
      }
      bound += rate;
      if (width < branch_width) {
        branch_width = width;
        branch = e;
      }
    });
    if (dead) return;
    if (cost + (bound + kScale - 1) / kScale >= best_) return;

    std::vector<std::size_t> banned;
    for (std::size_t i : inst_.covering[branch]) {
      if (forbidden_.test(i)) continue;
      Bitset next = uncovered;
      next.subtract(inst_.masks[i]);
      stack_.push_back(i);
      dfs(next, cost + inst_.weights[i]);
      stack_.pop_back();
      // Later siblings never use i: those covers were explored here.
      forbidden_.set(i);
      banned.push_back(i);
    }
    for (std::size_t i : banned) forbidden_.reset(i);
  }

  const Instance& inst_;
  std::uint64_t node_limit_;
  Bitset forbidden_;
  std::vector<std::size_t> stack_;
  std::uint64_t best_ = 0;
  std::vector<std::size_t> best_set_;
  std::uint64_t nodes_ = 0;
};

std::pair<std::uint64_t, std::vector<std::size_t>> greedy(const Instance& inst) {
  Bitset uncovered(inst.universe);
  for (std::size_t e = 0; e < inst.universe; ++e) uncovered.set(e);
  std::uint64_t cost = 0;
  std::vector<std::size_t> chosen;
  while (!uncovered.none()) {
    std::size_t pick = inst.masks.size();
    std::uint64_t pick_c = 0;
    for (std::size_t i = 0; i < inst.masks.size(); ++i) {
      const std::uint64_t c = inst.masks[i].count_and(uncovered);
      if (c == 0) continue;
      // c / w > pick_c / pick_w
      if (pick == inst.masks.size() || c * inst.weights[pick] > pick_c * inst.weights[i]) {
        pick = i;
        pick_c = c;
      }
    }
    chosen.push_back(pick);
    cost += inst.weights[pick];
    uncovered.subtract(inst.masks[pick]);
  }
  return {cost, chosen};
}

SetCoverResult finish(const Instance& inst, std::uint64_t cost, std::vector<std::size_t> chosen) {
  SetCoverResult out;
  out.feasible = true;
  out.cost = cost;
  for (std::size_t i : chosen) out.chosen.push_back(inst.origin[i]);
  std::sort(out.chosen.begin(), out.chosen.end());
  return out;
}

std::optional<std::size_t> first_uncovered(std::size_t universe, const std::vector<Bitset>& masks) {
  Bitset all(universe);
  for (const auto& m : masks) all |= m;
  for (std::size_t e = 0; e < universe; ++e)
    if (!all.test(e)) return e;
  return std::nullopt;
}

void check_input(std::size_t universe, const std::vector<Bitset>& masks,
                 const std::vector<std::uint64_t>& weights) {
  if (masks.size() != weights.size()) throw ValidationError("masks and weights differ in length");
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i].size() != universe) throw ValidationError("mask size does not match universe");
    if (weights[i] == 0) throw ValidationError("set cover weights must be positive");
  }
}

}  // namespace

SetCoverResult solve_set_cover(std::size_t universe, const std::vector<Bitset>& masks,
                               const std::vector<std::uint64_t>& weights,
                               std::uint64_t node_limit) {
  check_input(universe, masks, weights);
  if (universe == 0) return SetCoverResult{true, 0, {}, std::nullopt, 0};
  if (auto e = first_uncovered(universe, masks)) {
    SetCoverResult out;
    out.uncovered = e;
    return out;
  }
  const Instance inst = reduce(universe, masks, weights);
  auto [cost, chosen] = greedy(inst);
  Search search(inst, node_limit);
  search.run(cost, chosen);
  auto out = finish(inst, search.best(), search.best_set());
  out.nodes = search.nodes();
  return out;
}

SetCoverResult brute_force_set_cover(std::size_t universe, const std::vector<Bitset>& masks,
                                     const std::vector<std::uint64_t>& weights) {
  check_input(universe, masks, weights);
  if (masks.size() > 20) throw ValidationError("brute force limited to 20 candidates");
  SetCoverResult out;
  if (auto e = first_uncovered(universe, masks)) {
    out.uncovered = e;
    return out;
  }
  out.feasible = true;
  out.cost = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t subset = 0; subset < (1U << masks.size()); ++subset) {
    Bitset covered(universe);
    std::uint64_t cost = 0;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (!(subset >> i & 1U)) continue;
      covered |= masks[i];
      cost += weights[i];
      chosen.push_back(i);
    }
    if (covered.count() == universe && cost < out.cost) {
      out.cost = cost;
      out.chosen = chosen;
    }
  }
  return out;
}

}  // namespace lattdiv
