#include "finact/caps.hpp"

#include <cstdlib>
#include <string>

namespace finact {

std::size_t default_max_vertices() {
  const char* raw = std::getenv("FINACT_MAX_VERTICES");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxVertices;
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(raw, &used);
    if (used == std::string(raw).size() && value > 0) return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
  }
  return kDefaultMaxVertices;
}

}  // namespace finact
