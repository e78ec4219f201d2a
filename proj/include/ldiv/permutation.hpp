#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lattdiv {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1} stored as its image array.
///
/// Products follow function composition: (a * b)(x) = a(b(x)). Ordering is
/// lexicographic on the image arrays, which makes the identity the least
/// permutation of any degree.
class Permutation {
 public:
  Permutation() = default;

  /// Throws ValidationError unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  /// Parses 1-indexed cycle notation such as "(1 2 3)(4 5)". "()" is the
  /// identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;

  /// Cycle lengths of the nontrivial cycles, in order of least point.
  std::vector<std::size_t> cycle_type() const;

  /// Number of cycles including fixed points.
  std::size_t orbit_count() const;

  /// 1-indexed cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// g a g^-1.
Permutation conjugate(const Permutation& g, const Permutation& a);

/// Least m >= 1 with a^m = 1, the lcm of the cycle lengths.
std::uint64_t element_order(const Permutation& a);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace lattdiv
