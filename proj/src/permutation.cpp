#include "finact/permutation.hpp"

#include <string>

#include "finact/error.hpp"

namespace finact {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (const std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw InputError("permutation image array is not a bijection on {0.." +
                       std::to_string(images_.size()) + "-1}");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) {
    throw InputError("permutation degree mismatch: " + std::to_string(degree()) + " vs " +
                     std::to_string(rhs.degree()));
  }
  std::vector<std::uint32_t> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[rhs.images_[i]];
  return Permutation(std::move(out), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[images_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(out), Unchecked{});
}

bool Permutation::is_identity() const { return moved_points() == 0; }

std::size_t Permutation::moved_points() const {
  std::size_t moved = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) moved += images_[i] != i;
  return moved;
}

std::size_t hash_value(const Permutation& p) {
  std::size_t h = p.degree() * 0x9e3779b97f4a7c15ULL;
  for (const std::uint32_t v : p.images()) h = (h ^ v) * 0x100000001b3ULL;
  return h;
}

}  // namespace finact
