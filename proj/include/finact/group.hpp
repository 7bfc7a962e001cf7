#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "finact/permutation.hpp"
#include "json.hpp"

namespace finact {

enum class Family : std::uint8_t { kFree, kLattice, kCyclic, kPerm, kProduct };

std::string_view family_name(Family family);

/// Reduced word over signed generator indices: +i is the i-th generator, -i its inverse.
struct FreeWord {
  std::vector<int> letters;
  bool operator==(const FreeWord&) const = default;
};

struct LatticeVector {
  std::vector<std::int64_t> coords;
  bool operator==(const LatticeVector&) const = default;
};

/// Residue in [0, order).
struct CyclicResidue {
  std::int64_t value = 0;
  std::int64_t order = 1;
  bool operator==(const CyclicResidue&) const = default;
};

class GroupElement;

struct ProductPair {
  std::vector<GroupElement> parts;  // always two
  bool operator==(const ProductPair& other) const;
};

/// Element of one of the supported group families, always held in canonical form.
class GroupElement {
 public:
  using Payload = std::variant<FreeWord, LatticeVector, CyclicResidue, Permutation, ProductPair>;

  GroupElement() : payload_(FreeWord{}) {}

  /// Freely reduces `letters`. Zero letters are rejected.
  static GroupElement free_word(std::vector<int> letters);
  static GroupElement lattice(std::vector<std::int64_t> coords);
  static GroupElement cyclic(std::int64_t value, std::int64_t order);
  static GroupElement perm(Permutation p);
  static GroupElement product(GroupElement first, GroupElement second);

  Family family() const { return static_cast<Family>(payload_.index()); }
  const Payload& payload() const { return payload_; }

  const FreeWord& word() const { return std::get<FreeWord>(payload_); }
  const LatticeVector& vec() const { return std::get<LatticeVector>(payload_); }
  const CyclicResidue& residue() const { return std::get<CyclicResidue>(payload_); }
  const Permutation& permutation() const { return std::get<Permutation>(payload_); }
  const GroupElement& first() const { return std::get<ProductPair>(payload_).parts[0]; }
  const GroupElement& second() const { return std::get<ProductPair>(payload_).parts[1]; }

  bool is_identity() const;

  /// Byte string that is equal for two elements iff the elements are equal.
  std::string encode() const;

  bool operator==(const GroupElement&) const = default;

 private:
  explicit GroupElement(Payload payload) : payload_(std::move(payload)) {}
  Payload payload_;
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
/// Identity with the same family and shape as `a`.
GroupElement identity_like(const GroupElement& a);
/// a^n for n >= 0 by repeated squaring.
GroupElement power(const GroupElement& a, std::uint64_t n);

/// Shortlex order. Free letters rank g1 < g1^-1 < g2 < g2^-1 < ...; lattice vectors
/// are ordered by l1 length then coordinatewise with 1 < -1 < 2 < -2 < ...
std::strong_ordering shortlex_compare(const GroupElement& a, const GroupElement& b);

struct ShortlexLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return shortlex_compare(a, b) < 0;
  }
};

/// Text encoding: free word and lattice as integer lists, cyclic as an integer,
/// permutation as its image array, product as a two-element list.
nlohmann::json element_to_json(const GroupElement& g);
std::string element_text(const GroupElement& g);

/// Duplicate-free, shortlex-ordered set of elements.
class GenSet {
 public:
  GenSet() = default;
  explicit GenSet(std::vector<GroupElement> elements);

  std::span<const GroupElement> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const GroupElement& g) const;
  /// Position of `g`, or size() when absent.
  std::size_t index_of(const GroupElement& g) const;

  bool operator==(const GenSet&) const = default;

 private:
  std::vector<GroupElement> elements_;
};

/// A ∪ A⁻¹ ∪ {e}. Throws InputError on an empty set.
GenSet symmetrize(const GenSet& a);

/// All products a1⋯ak with ai ∈ A. Throws BudgetExceeded past `cap` elements.
GenSet product_set(const GenSet& a, int k, std::size_t cap);

/// Descriptor of a concrete group: which family and its shape parameters.
class Group {
 public:
  static Group free(int rank);
  static Group lattice(int dim);
  static Group cyclic(std::int64_t order);
  /// Subgroup of Sym(degree) generated by `generators`; empty means all of Sym(degree).
  static Group perm(int degree, std::vector<Permutation> generators = {});
  static Group product(Group first, Group second);

  Family family() const { return family_; }
  int rank() const { return size_; }
  int dim() const { return size_; }
  int degree() const { return size_; }
  std::int64_t order() const { return order_; }
  std::span<const Permutation> perm_generators() const { return perm_generators_; }
  const Group& factor(std::size_t i) const { return factors_[i]; }

  GroupElement identity() const;
  /// Positive generators in canonical order.
  std::vector<GroupElement> generators() const;
  bool contains(const GroupElement& g) const;

  /// Word length with respect to generators() and their inverses.
  std::int64_t word_length(const GroupElement& g) const;

  /// Parses the text encoding; throws InputError naming `path` on failure.
  GroupElement parse_element(const nlohmann::json& j, const std::string& path = "$") const;

  nlohmann::json descriptor() const;
  static Group from_descriptor(const nlohmann::json& j, const std::string& path = "$");

  bool operator==(const Group&) const = default;

 private:
  Family family_ = Family::kFree;
  int size_ = 0;
  std::int64_t order_ = 0;
  std::vector<Permutation> perm_generators_;
  std::vector<Group> factors_;
};

}  // namespace finact

template <>
struct std::hash<finact::GroupElement> {
  std::size_t operator()(const finact::GroupElement& g) const {
    return std::hash<std::string>{}(g.encode());
  }
};
