#pragma once

#include <cstddef>

namespace finact {

inline constexpr std::size_t kDefaultMaxVertices = 1'000'000;

/// Returns kDefaultMaxVertices unless FINACT_MAX_VERTICES holds a positive integer.
std::size_t default_max_vertices();

/// Size limits shared by every pipeline stage.
struct Caps {
  std::size_t max_vertices = default_max_vertices();
  std::size_t max_quotient_order = 1'000'000;
  std::size_t max_ball = 1'000'000;
  // Materialized models store a dense |Y| x |Y| matrix.
  std::size_t max_matrix_vertices = 4096;
  // Upper bound on bytes held while enumerating quotient images.
  std::size_t max_image_bytes = std::size_t{1} << 30;

  bool operator==(const Caps&) const = default;
};

}  // namespace finact
