#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace finact {

/// A bijection of {0, ..., n-1} stored as its image array.
///
/// Products compose right to left: (a * b)(i) == a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws InputError unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t point) const { return images_[point]; }
  std::span<const std::uint32_t> images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;

  bool is_identity() const;
  std::size_t moved_points() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<std::uint32_t> images, Unchecked) : images_(std::move(images)) {}

  std::vector<std::uint32_t> images_;
};

std::size_t hash_value(const Permutation& p);

}  // namespace finact
