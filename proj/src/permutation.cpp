#include "ldiv/permutation.hpp"

#include <cctype>
#include <numeric>

#include "ldiv/error.hpp"

namespace lattdiv {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p])
      throw ValidationError("image array is not a permutation of 0.." +
                            std::to_string(images_.size() ? images_.size() - 1 : 0));
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ValidationError("cycle notation at position " + std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_ws();
  if (pos == text.size()) fail("empty string");
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<Point> cycle;
    while (true) {
      skip_ws();
      if (pos == text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      std::size_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > degree) fail("point exceeds degree " + std::to_string(degree));
        ++pos;
      }
      if (value == 0) fail("points are 1-indexed");
      cycle.push_back(static_cast<Point>(value - 1));
    }
    for (Point p : cycle) {
      if (used[p]) fail("point " + std::to_string(p + 1) + " repeated");
      used[p] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation result = identity(degree());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len > 1) lengths.push_back(len);
  }
  return lengths;
}

std::size_t Permutation::orbit_count() const {
  std::size_t moved = 0;
  auto lengths = cycle_type();
  for (std::size_t len : lengths) moved += len;
  return lengths.size() + (degree() - moved);
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    bool first = true;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw ValidationError("degree mismatch in product");
  Permutation p;
  p.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) p.images_[i] = a.images_[b.images_[i]];
  return p;
}

Permutation conjugate(const Permutation& g, const Permutation& a) {
  // g a g^-1 maps g(x) to g(a(x)).
  if (g.degree() != a.degree()) throw ValidationError("degree mismatch in conjugation");
  std::vector<Point> images(a.degree());
  for (std::size_t x = 0; x < a.degree(); ++x) images[g[static_cast<Point>(x)]] = g[a[static_cast<Point>(x)]];
  return Permutation(std::move(images));
}

std::uint64_t element_order(const Permutation& a) {
  std::uint64_t order = 1;
  for (std::size_t len : a.cycle_type()) order = std::lcm(order, static_cast<std::uint64_t>(len));
  return order;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lattdiv
