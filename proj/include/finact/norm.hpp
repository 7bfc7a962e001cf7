#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finact/action.hpp"
#include "finact/caps.hpp"
#include "finact/group.hpp"
#include "finact/model.hpp"

namespace finact {

/// Finite group given by its multiplication table, with a candidate norm ρ.
struct FiniteNormedGroup {
  std::vector<std::string> elements;  // text encodings, identity first
  std::vector<std::size_t> mul;       // row-major |H| x |H|
  std::vector<double> rho;
  std::size_t identity = 0;

  std::size_t size() const { return elements.size(); }
  std::size_t product(std::size_t i, std::size_t j) const { return mul[i * size() + j]; }
  /// Index of the two-sided inverse; throws InputError if the table has none.
  std::size_t inverse_of(std::size_t i) const;

  bool operator==(const FiniteNormedGroup&) const = default;
};

/// Function s: G -> [0, ∞) expected to satisfy s(e) = 0, s(g⁻¹) = s(g) and
/// s(gh) <= s(g) + s(h).
struct Seminorm {
  enum class Kind { kWord, kStandard, kPullback, kTable };

  Kind kind = Kind::kStandard;
  /// kWord: one nonnegative weight per positive generator of the group.
  std::vector<double> weights;
  /// kPullback: s(g) = ρ(φ(g)) with φ given on the generators as table indices.
  std::shared_ptr<const FiniteNormedGroup> target;
  std::vector<std::size_t> gen_images;
  /// kTable: explicit values; evaluation outside the table is an error.
  std::vector<std::pair<GroupElement, double>> table;

  static Seminorm word(std::vector<double> weights);
  static Seminorm standard();

  double operator()(const Group& group, const GroupElement& g) const;

  bool operator==(const Seminorm& other) const;
};

std::string_view seminorm_kind_name(Seminorm::Kind kind);

/// X0 = {e} and κ(g, h) = s(g⁻¹h).
SampledAction seminorm_to_window(const Group& group, const Seminorm& s, const GenSet& a);

struct NormViolation {
  enum class Kind {
    kBadTable,
    kIdentity,
    kAssociativity,
    kInverse,
    kNegative,
    kRhoIdentity,
    kDefiniteness,
    kSymmetry,
    kSubadditivity
  };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
};

struct NormReport {
  std::size_t violation_count = 0;
  std::vector<NormViolation> violations;  // first kMaxListed only
  bool ok() const { return violation_count == 0; }
  static constexpr std::size_t kMaxListed = 100;
};

std::string_view norm_violation_name(NormViolation::Kind kind);

/// Exhaustive group-axiom and norm-axiom sweep over the table.
NormReport validate_norm(const FiniteNormedGroup& h, double tol = 1e-9);

struct SeminormSample {
  GroupElement g;
  double s = 0.0;
  double rho = 0.0;
};

struct NormApproximation {
  FiniteNormedGroup group;
  std::map<std::string, std::size_t> phi;  // text of g -> element index
  std::vector<SeminormSample> samples;     // one per element of the symmetrized A
  ModelParams params;
  double max_deviation = 0.0;  // max |ρ(φ(g)) - s(g)|
};

/// Builds a materialized model of the seminorm window and reads off
/// ρ(q) = η((q, e), (e, e)) on H' = π(<A ∪ generators>).
NormApproximation approximate_seminorm(const Group& group, const Seminorm& s, const GenSet& a, double epsilon,
                                       const Caps& caps = {});

}  // namespace finact
