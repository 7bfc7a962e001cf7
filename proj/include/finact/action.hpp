#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "finact/group.hpp"
#include "json.hpp"

namespace finact {

/// A point of the acted-on space: a real vector (translation actions) or a group element.
using Point = std::variant<std::vector<double>, GroupElement>;

std::string point_label(const Point& p);

/// Homomorphism F_r -> Q given by the images of the r free generators.
struct HomTable {
  Group target;
  std::vector<GroupElement> gen_images;

  GroupElement apply(const GroupElement& word) const;
  bool operator==(const HomTable&) const = default;
};

struct ActionSpec {
  enum class Kind { kTranslation, kLeftDiscrete, kLeftWord, kLeftRight };
  Kind kind = Kind::kTranslation;
  std::optional<HomTable> hom;  // left-right only

  bool operator==(const ActionSpec&) const = default;
};

std::string_view action_kind_name(ActionSpec::Kind kind);

/// An isometric action evaluable pointwise.
class Action {
 public:
  virtual ~Action() = default;
  virtual const Group& group() const = 0;
  virtual Point act(const GroupElement& g, const Point& x) const = 0;
  virtual double distance(const Point& x, const Point& y) const = 0;
  virtual Point parse_point(const nlohmann::json& j, const std::string& path) const = 0;
  /// Default window point when none is given (the origin or the identity).
  virtual Point base_point() const = 0;
};

/// translation: Z^n on R^n by x + g with Euclidean distance.
/// left-discrete / left-word: G on itself by left multiplication, 0-1 or word metric.
/// left-right: F_r x F_r on a finite group Q by (g,h).x = π(g) x π(h)^-1 with the 0-1 metric.
std::shared_ptr<const Action> make_builtin_action(const Group& group, const ActionSpec& spec);

/// Window data: κ((g,x),(h,y)) = d(φ_g x, φ_h y), row-major over (g, x).
struct SampledAction {
  enum class Provenance { kBuiltin, kTable, kSeminorm };

  GenSet a;
  std::vector<std::string> x0;
  std::vector<double> kappa;
  Provenance provenance = Provenance::kBuiltin;

  std::size_t size() const { return a.size() * x0.size(); }
  std::size_t index(std::size_t g, std::size_t x) const { return g * x0.size() + x; }
  double operator()(std::size_t i, std::size_t j) const { return kappa[i * size() + j]; }
};

struct MetricViolation {
  enum class Kind { kNonFinite, kNegative, kDiagonal, kAsymmetric, kTriangle };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;
};

struct PseudometricReport {
  std::size_t violation_count = 0;
  std::vector<MetricViolation> violations;  // first kMaxListed only
  bool ok() const { return violation_count == 0; }
  static constexpr std::size_t kMaxListed = 100;
};

std::string_view violation_name(MetricViolation::Kind kind);

/// Checks finiteness, nonnegativity, zero diagonal, symmetry and every triangle
/// inequality of an n x n row-major matrix, each up to `tol`.
PseudometricReport validate_pseudometric(std::span<const double> matrix, std::size_t n, double tol = 1e-9);

/// Fills κ over A x X0 and validates it. Throws InputError on a non-pseudometric window.
SampledAction sample_action(const Action& action, const GenSet& a, std::span<const Point> x0);

/// Validates and canonicalizes a user table. `a` must be symmetric and contain e;
/// rows are reordered into shortlex order of A.
SampledAction table_action(std::span<const GroupElement> a, std::vector<std::string> x0,
                           std::span<const double> kappa);

}  // namespace finact
