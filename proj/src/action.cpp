#include "finact/action.hpp"

#include <cmath>
#include <sstream>

#include "finact/error.hpp"

namespace finact {
namespace {

class TranslationAction final : public Action {
 public:
  explicit TranslationAction(Group group) : group_(std::move(group)) {}

  const Group& group() const override { return group_; }

  Point act(const GroupElement& g, const Point& x) const override {
    auto v = std::get<std::vector<double>>(x);
    const auto& c = g.vec().coords;
    if (c.size() != v.size()) throw InputError("translation: dimension mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += static_cast<double>(c[i]);
    return v;
  }

  double distance(const Point& x, const Point& y) const override {
    const auto& u = std::get<std::vector<double>>(x);
    const auto& v = std::get<std::vector<double>>(y);
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += (u[i] - v[i]) * (u[i] - v[i]);
    return std::sqrt(sum);
  }

  Point parse_point(const nlohmann::json& j, const std::string& path) const override {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(group_.dim())) {
      throw InputError(path + ": translation point must be a list of " + std::to_string(group_.dim()) + " numbers");
    }
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) throw InputError(path + "[" + std::to_string(i) + "]: expected a number");
      v.push_back(j[i].get<double>());
    }
    return v;
  }

  Point base_point() const override { return std::vector<double>(static_cast<std::size_t>(group_.dim()), 0.0); }

 private:
  Group group_;
};

class LeftMultiplicationAction final : public Action {
 public:
  LeftMultiplicationAction(Group group, bool word_metric) : group_(std::move(group)), word_metric_(word_metric) {}

  const Group& group() const override { return group_; }

  Point act(const GroupElement& g, const Point& x) const override {
    return multiply(g, std::get<GroupElement>(x));
  }

  double distance(const Point& x, const Point& y) const override {
    const auto& u = std::get<GroupElement>(x);
    const auto& v = std::get<GroupElement>(y);
    if (!word_metric_) return u == v ? 0.0 : 1.0;
    return static_cast<double>(group_.word_length(multiply(inverse(u), v)));
  }

  Point parse_point(const nlohmann::json& j, const std::string& path) const override {
    return group_.parse_element(j, path);
  }

  Point base_point() const override { return group_.identity(); }

 private:
  Group group_;
  bool word_metric_;
};

class LeftRightAction final : public Action {
 public:
  LeftRightAction(Group group, HomTable hom) : group_(std::move(group)), hom_(std::move(hom)) {}

  const Group& group() const override { return group_; }

  Point act(const GroupElement& g, const Point& x) const override {
    const GroupElement left = hom_.apply(g.first());
    const GroupElement right = hom_.apply(g.second());
    return multiply(multiply(left, std::get<GroupElement>(x)), inverse(right));
  }

  double distance(const Point& x, const Point& y) const override {
    return std::get<GroupElement>(x) == std::get<GroupElement>(y) ? 0.0 : 1.0;
  }

  Point parse_point(const nlohmann::json& j, const std::string& path) const override {
    return hom_.target.parse_element(j, path);
  }

  Point base_point() const override { return hom_.target.identity(); }

 private:
  Group group_;
  HomTable hom_;
};

}  // namespace

std::string point_label(const Point& p) {
  if (const auto* g = std::get_if<GroupElement>(&p)) return element_text(*g);
  return nlohmann::json(std::get<std::vector<double>>(p)).dump();
}

GroupElement HomTable::apply(const GroupElement& word) const {
  if (word.family() != Family::kFree) throw FamilyMismatch("hom table expects a free word");
  GroupElement out = target.identity();
  for (const int l : word.word().letters) {
    const auto idx = static_cast<std::size_t>(std::abs(l) - 1);
    if (idx >= gen_images.size()) throw InputError("hom table has no image for generator " + std::to_string(idx + 1));
    out = multiply(out, l > 0 ? gen_images[idx] : inverse(gen_images[idx]));
  }
  return out;
}

std::string_view action_kind_name(ActionSpec::Kind kind) {
  switch (kind) {
    case ActionSpec::Kind::kTranslation: return "translation";
    case ActionSpec::Kind::kLeftDiscrete: return "left-discrete";
    case ActionSpec::Kind::kLeftWord: return "left-word";
    case ActionSpec::Kind::kLeftRight: return "left-right";
  }
  return "unknown";
}

std::shared_ptr<const Action> make_builtin_action(const Group& group, const ActionSpec& spec) {
  switch (spec.kind) {
    case ActionSpec::Kind::kTranslation:
      if (group.family() != Family::kLattice) throw InputError("translation action needs a lattice group");
      return std::make_shared<TranslationAction>(group);
    case ActionSpec::Kind::kLeftDiscrete: return std::make_shared<LeftMultiplicationAction>(group, false);
    case ActionSpec::Kind::kLeftWord: return std::make_shared<LeftMultiplicationAction>(group, true);
    case ActionSpec::Kind::kLeftRight: {
      if (!spec.hom) throw InputError("left-right action needs a hom table");
      const auto rank = static_cast<int>(spec.hom->gen_images.size());
      if (rank < 1) throw InputError("left-right hom table needs at least one generator image");
      if (!(group == Group::product(Group::free(rank), Group::free(rank)))) {
        throw InputError("left-right action needs the group F_" + std::to_string(rank) + " x F_" +
                         std::to_string(rank));
      }
      for (const auto& img : spec.hom->gen_images) {
        if (!spec.hom->target.contains(img)) throw InputError("hom image is not in the target group");
      }
      if (spec.hom->target.family() != Family::kCyclic && spec.hom->target.family() != Family::kPerm) {
        throw InputError("left-right target must be a finite cyclic or permutation group");
      }
      return std::make_shared<LeftRightAction>(group, *spec.hom);
    }
  }
  throw InputError("unknown action kind");
}

std::string_view violation_name(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::kNonFinite: return "non-finite";
    case MetricViolation::Kind::kNegative: return "negative";
    case MetricViolation::Kind::kDiagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::kAsymmetric: return "asymmetric";
    case MetricViolation::Kind::kTriangle: return "triangle";
  }
  return "unknown";
}

PseudometricReport validate_pseudometric(std::span<const double> matrix, std::size_t n, double tol) {
  if (matrix.size() != n * n) throw InputError("distance matrix is not square");
  PseudometricReport report;
  const auto record = [&](MetricViolation v) {
    ++report.violation_count;
    if (report.violations.size() < PseudometricReport::kMaxListed) report.violations.push_back(v);
  };
  const auto at = [&](std::size_t i, std::size_t j) { return matrix[i * n + j]; };
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v)) {
        record({MetricViolation::Kind::kNonFinite, i, j, 0, v});
        finite = false;
        continue;
      }
      if (v < -tol) record({MetricViolation::Kind::kNegative, i, j, 0, -v});
      if (i == j && std::abs(v) > tol) record({MetricViolation::Kind::kDiagonal, i, j, 0, std::abs(v)});
      if (i < j && std::abs(v - at(j, i)) > tol) {
        record({MetricViolation::Kind::kAsymmetric, i, j, 0, std::abs(v - at(j, i))});
      }
    }
  }
  if (!finite) return report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = at(i, k) - (at(i, j) + at(j, k));
        if (excess > tol) record({MetricViolation::Kind::kTriangle, i, j, k, excess});
      }
    }
  }
  return report;
}

namespace {

void throw_if_invalid(const PseudometricReport& report, const std::string& what) {
  if (report.ok()) return;
  const auto& v = report.violations.front();
  std::ostringstream msg;
  msg << what << " is not a pseudometric: " << report.violation_count << " violation(s), first "
      << violation_name(v.kind) << " at (" << v.i << "," << v.j;
  if (v.kind == MetricViolation::Kind::kTriangle) msg << "," << v.k;
  msg << ") by " << v.excess;
  throw InputError(msg.str());
}

}  // namespace

SampledAction sample_action(const Action& action, const GenSet& a, std::span<const Point> x0) {
  if (a.empty() || x0.empty()) throw InputError("window needs nonempty A and X0");
  for (const auto& g : a) {
    if (!action.group().contains(g)) throw FamilyMismatch("window element " + element_text(g) + " is not in the group");
  }
  SampledAction sa;
  sa.a = a;
  sa.provenance = SampledAction::Provenance::kBuiltin;
  for (const auto& x : x0) sa.x0.push_back(point_label(x));

  std::vector<Point> images;
  images.reserve(a.size() * x0.size());
  for (const auto& g : a) {
    for (const auto& x : x0) images.push_back(action.act(g, x));
  }
  const std::size_t n = images.size();
  sa.kappa.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = action.distance(images[i], images[j]);
      sa.kappa[i * n + j] = d;
      sa.kappa[j * n + i] = d;
    }
  }
  throw_if_invalid(validate_pseudometric(sa.kappa, n), "sampled window");
  return sa;
}

SampledAction table_action(std::span<const GroupElement> a, std::vector<std::string> x0,
                           std::span<const double> kappa) {
  if (a.empty() || x0.empty()) throw InputError("table needs nonempty A and X0");
  const GenSet canonical{std::vector<GroupElement>(a.begin(), a.end())};
  if (canonical.size() != a.size()) throw InputError("table A contains duplicate elements");
  if (!(symmetrize(canonical) == canonical)) {
    throw InputError("table A must be symmetric and contain the identity");
  }
  const std::size_t nx = x0.size();
  const std::size_t n = a.size() * nx;
  if (kappa.size() != n * n) {
    throw InputError("table kappa must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  throw_if_invalid(validate_pseudometric(kappa, n), "table kappa");

  // Row r of the input corresponds to (a[r / nx], x0[r % nx]).
  std::vector<std::size_t> source_of(n);
  for (std::size_t gi = 0; gi < a.size(); ++gi) {
    const std::size_t ci = canonical.index_of(a[gi]);
    for (std::size_t xi = 0; xi < nx; ++xi) source_of[ci * nx + xi] = gi * nx + xi;
  }
  SampledAction sa;
  sa.a = canonical;
  sa.x0 = std::move(x0);
  sa.provenance = SampledAction::Provenance::kTable;
  sa.kappa.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sa.kappa[i * n + j] = kappa[source_of[i] * n + source_of[j]];
  }
  return sa;
}

}  // namespace finact
