#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "finact/caps.hpp"
#include "finact/group.hpp"
#include "finact/permutation.hpp"
#include "json.hpp"

namespace finact {

/// Vector in (Z/modulus)^n with entries in [0, modulus).
struct Residues {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> values;
  auto operator<=>(const Residues&) const = default;
  bool operator==(const Residues&) const = default;
};

using FiniteComponent = std::variant<Residues, Permutation>;

/// Element of a finite target group. Product targets are flattened into one
/// component per factor, left to right.
struct FiniteElement {
  std::vector<FiniteComponent> components;

  auto operator<=>(const FiniteElement&) const = default;
  bool operator==(const FiniteElement&) const = default;

  bool is_identity() const;
  /// Canonical byte encoding, usable as a lookup key.
  std::string encode() const;
  std::size_t byte_size() const;
};

FiniteElement operator*(const FiniteElement& a, const FiniteElement& b);
FiniteElement inverse(const FiniteElement& a);
nlohmann::json finite_to_json(const FiniteElement& q);

}  // namespace finact

template <>
struct std::hash<finact::FiniteElement> {
  std::size_t operator()(const finact::FiniteElement& q) const;
};

namespace finact {

/// A homomorphism from a supported group onto a finite group, with a certificate
/// naming a set B = A^k on which it is injective.
class FiniteQuotient {
 public:
  enum class Kind { kLattice, kFreeBall, kIdentity, kProduct };

  Kind kind() const { return kind_; }
  const Group& source() const { return source_; }

  FiniteElement apply(const GroupElement& g) const;
  FiniteElement identity() const;

  /// {"kind":"lattice","modulus":N} | {"kind":"free-ball","radius":R,"ball_size":S} |
  /// {"kind":"product","factors":[...]} | {"kind":"identity"}
  nlohmann::json descriptor() const;

  std::int64_t modulus() const { return modulus_; }
  int radius() const { return radius_; }
  std::size_t ball_size() const;
  /// Reduced words of the ball, shortlex ordered; entry i is the point with label i.
  std::span<const std::vector<int>> ball() const;
  /// Ball position of a reduced word, if it lies in the ball.
  std::optional<std::size_t> ball_index(const GroupElement& w) const;
  /// Permutation assigned to the positive generator `i` (1-based).
  const Permutation& generator_image(int i) const;
  const FiniteQuotient& factor(std::size_t i) const { return factors_.at(i); }

  /// Certified injective on product_set(certified_generators(), certified_power()).
  const GenSet& certified_generators() const { return cert_generators_; }
  int certified_power() const { return cert_power_; }
  GenSet certified_set(std::size_t cap) const;

  friend FiniteQuotient lattice_quotient(int dim, const GenSet& b);
  friend FiniteQuotient free_ball_quotient(int rank, int radius, std::size_t max_ball);
  friend FiniteQuotient identity_quotient(const Group& finite_group);
  friend FiniteQuotient product_quotient(const FiniteQuotient& q1, const FiniteQuotient& q2);
  friend FiniteQuotient lattice_quotient_with_modulus(int dim, std::int64_t modulus);

 private:
  struct Ball;

  Kind kind_ = Kind::kIdentity;
  Group source_;
  std::int64_t modulus_ = 1;
  int radius_ = 0;
  std::shared_ptr<const Ball> ball_;
  std::vector<FiniteQuotient> factors_;
  GenSet cert_generators_;
  int cert_power_ = 1;

  void set_certificate(GenSet a, int k) {
    cert_generators_ = std::move(a);
    cert_power_ = k;
  }
  friend FiniteQuotient quotient_for(const Group& group, const GenSet& a, int k, const Caps& caps);
};

/// Z^dim -> (Z/N)^dim with N = 2 * max|coordinate over B| + 1.
FiniteQuotient lattice_quotient(int dim, const GenSet& b);
FiniteQuotient lattice_quotient_with_modulus(int dim, std::int64_t modulus);

/// Number of reduced words of length <= radius in the free group of the given rank.
std::size_t free_ball_size(int rank, int radius);

/// Action of F_rank on the shortlex-ordered radius ball by partial left
/// multiplication, with unmatched points paired in shortlex order.
FiniteQuotient free_ball_quotient(int rank, int radius, std::size_t max_ball);

/// The identity homomorphism of a finite (cyclic or permutation) group.
FiniteQuotient identity_quotient(const Group& finite_group);

FiniteQuotient product_quotient(const FiniteQuotient& q1, const FiniteQuotient& q2);

/// Quotient injective on B = A^k. Lattice: N = 2kM + 1 with M the largest
/// coordinate magnitude in A. Free: ball radius R = 2kL with L the longest word in A.
FiniteQuotient quotient_for(const Group& group, const GenSet& a, int k, const Caps& caps);

struct InjectivityReport {
  std::size_t set_size = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::pair<GroupElement, GroupElement>> collisions;
  bool injective() const { return collisions.empty(); }
};

InjectivityReport check_injective(const FiniteQuotient& q, const GenSet& b, std::size_t cap);

/// Breadth-first closure of π(generators) under multiplication, starting at the
/// identity. Throws BudgetExceeded once the closure passes `cap` elements or
/// `max_bytes` of storage.
std::vector<FiniteElement> enumerate_image(const FiniteQuotient& q,
                                           std::span<const GroupElement> generators, std::size_t cap,
                                           std::size_t max_bytes = Caps{}.max_image_bytes);

}  // namespace finact
