#include "finact/norm.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "finact/error.hpp"

namespace finact {

std::size_t FiniteNormedGroup::inverse_of(std::size_t i) const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (product(i, j) == identity && product(j, i) == identity) return j;
  }
  throw InputError("element " + elements[i] + " has no inverse in the table");
}

Seminorm Seminorm::word(std::vector<double> weights) {
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("word seminorm weights must be finite and nonnegative");
  }
  Seminorm s;
  s.kind = Kind::kWord;
  s.weights = std::move(weights);
  return s;
}

Seminorm Seminorm::standard() { return Seminorm{}; }

bool Seminorm::operator==(const Seminorm& other) const {
  const bool same_target = (target == nullptr) == (other.target == nullptr) && (!target || *target == *other.target);
  return kind == other.kind && weights == other.weights && same_target && gen_images == other.gen_images &&
         table == other.table;
}

std::string_view seminorm_kind_name(Seminorm::Kind kind) {
  switch (kind) {
    case Seminorm::Kind::kWord: return "word";
    case Seminorm::Kind::kStandard: return "standard";
    case Seminorm::Kind::kPullback: return "pullback";
    case Seminorm::Kind::kTable: return "table";
  }
  return "unknown";
}

namespace {

std::size_t generator_count(const Group& group) { return group.generators().size(); }

double word_seminorm(const Group& group, std::span<const double> weights, const GroupElement& g) {
  switch (group.family()) {
    case Family::kFree: {
      double total = 0.0;
      for (const int l : g.word().letters) total += weights[static_cast<std::size_t>(std::abs(l) - 1)];
      return total;
    }
    case Family::kLattice: {
      double total = 0.0;
      const auto& c = g.vec().coords;
      for (std::size_t i = 0; i < c.size(); ++i) total += weights[i] * std::abs(static_cast<double>(c[i]));
      return total;
    }
    case Family::kCyclic:
      if (weights.empty()) return 0.0;
      return weights[0] * static_cast<double>(group.word_length(g));
    case Family::kPerm:
      if (std::adjacent_find(weights.begin(), weights.end(), std::not_equal_to<>()) != weights.end()) {
        throw InputError("word seminorm on a permutation group needs equal weights");
      }
      return weights.empty() ? 0.0 : weights[0] * static_cast<double>(group.word_length(g));
    case Family::kProduct: {
      const std::size_t left = generator_count(group.factor(0));
      return word_seminorm(group.factor(0), weights.subspan(0, left), g.first()) +
             word_seminorm(group.factor(1), weights.subspan(left), g.second());
    }
  }
  return 0.0;
}

std::size_t table_power(const FiniteNormedGroup& h, std::size_t base, std::int64_t exponent) {
  std::size_t step = base;
  if (exponent < 0) {
    step = h.inverse_of(base);
    exponent = -exponent;
  }
  std::size_t acc = h.identity;
  for (std::int64_t i = 0; i < exponent; ++i) acc = h.product(acc, step);
  return acc;
}

std::size_t pullback_image(const Group& group, const FiniteNormedGroup& h, std::span<const std::size_t> images,
                           const GroupElement& g) {
  const auto image = [&](std::size_t i) {
    if (i >= images.size() || images[i] >= h.size()) throw InputError("pullback seminorm is missing a generator image");
    return images[i];
  };
  switch (group.family()) {
    case Family::kFree: {
      std::size_t acc = h.identity;
      for (const int l : g.word().letters) {
        const std::size_t s = image(static_cast<std::size_t>(std::abs(l) - 1));
        acc = h.product(acc, l > 0 ? s : h.inverse_of(s));
      }
      return acc;
    }
    case Family::kLattice: {
      std::size_t acc = h.identity;
      const auto& c = g.vec().coords;
      for (std::size_t i = 0; i < c.size(); ++i) acc = h.product(acc, table_power(h, image(i), c[i]));
      return acc;
    }
    case Family::kCyclic:
      if (g.residue().order == 1) return h.identity;
      return table_power(h, image(0), g.residue().value);
    case Family::kPerm:
    case Family::kProduct: break;
  }
  throw InputError("pullback seminorms support free, lattice and cyclic groups");
}

}  // namespace

double Seminorm::operator()(const Group& group, const GroupElement& g) const {
  if (!group.contains(g)) throw FamilyMismatch("seminorm argument " + element_text(g) + " is not in the group");
  switch (kind) {
    case Kind::kStandard: return g.is_identity() ? 0.0 : 1.0;
    case Kind::kWord:
      if (weights.size() != generator_count(group)) {
        throw InputError("word seminorm needs " + std::to_string(generator_count(group)) + " weights");
      }
      return word_seminorm(group, weights, g);
    case Kind::kPullback:
      if (!target) throw InputError("pullback seminorm has no target group");
      return target->rho[pullback_image(group, *target, gen_images, g)];
    case Kind::kTable:
      for (const auto& [element, value] : table) {
        if (element == g) return value;
      }
      throw InputError("seminorm table has no value for " + element_text(g));
  }
  return 0.0;
}

SampledAction seminorm_to_window(const Group& group, const Seminorm& s, const GenSet& a) {
  if (a.empty()) throw InputError("seminorm window needs a nonempty A");
  SampledAction sa;
  sa.a = a;
  sa.x0 = {element_text(group.identity())};
  sa.provenance = SampledAction::Provenance::kSeminorm;
  const std::size_t n = a.size();
  sa.kappa.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sa.kappa[i * n + j] = s(group, multiply(inverse(a[i]), a[j]));
    }
  }
  const auto report = validate_pseudometric(sa.kappa, n);
  if (!report.ok()) {
    throw InputError("seminorm window violates the seminorm axioms (" + std::to_string(report.violation_count) +
                     " pseudometric violations)");
  }
  return sa;
}

std::string_view norm_violation_name(NormViolation::Kind kind) {
  switch (kind) {
    case NormViolation::Kind::kBadTable: return "bad-table";
    case NormViolation::Kind::kIdentity: return "identity";
    case NormViolation::Kind::kAssociativity: return "associativity";
    case NormViolation::Kind::kInverse: return "inverse";
    case NormViolation::Kind::kNegative: return "negative";
    case NormViolation::Kind::kRhoIdentity: return "rho-identity";
    case NormViolation::Kind::kDefiniteness: return "definiteness";
    case NormViolation::Kind::kSymmetry: return "symmetry";
    case NormViolation::Kind::kSubadditivity: return "subadditivity";
  }
  return "unknown";
}

NormReport validate_norm(const FiniteNormedGroup& h, double tol) {
  NormReport report;
  const auto record = [&](NormViolation v) {
    ++report.violation_count;
    if (report.violations.size() < NormReport::kMaxListed) report.violations.push_back(v);
  };
  const std::size_t n = h.size();
  if (n == 0 || h.mul.size() != n * n || h.rho.size() != n || h.identity >= n ||
      std::any_of(h.mul.begin(), h.mul.end(), [n](std::size_t v) { return v >= n; })) {
    record({NormViolation::Kind::kBadTable});
    return report;
  }
  const std::size_t e = h.identity;
  for (std::size_t i = 0; i < n; ++i) {
    if (h.product(e, i) != i || h.product(i, e) != i) record({NormViolation::Kind::kIdentity, i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (h.product(h.product(i, j), k) != h.product(i, h.product(j, k))) {
          record({NormViolation::Kind::kAssociativity, i, j, k});
        }
      }
    }
  }
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h.product(i, j) == e && h.product(j, i) == e) {
        inv[i] = j;
        break;
      }
    }
    if (inv[i] == n) record({NormViolation::Kind::kInverse, i});
  }
  if (std::abs(h.rho[e]) > tol) record({NormViolation::Kind::kRhoIdentity, e});
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h.rho[i] >= -tol)) record({NormViolation::Kind::kNegative, i});
    if (i != e && h.rho[i] <= tol) record({NormViolation::Kind::kDefiniteness, i});
    if (inv[i] != n && std::abs(h.rho[i] - h.rho[inv[i]]) > tol) record({NormViolation::Kind::kSymmetry, i, inv[i]});
    for (std::size_t j = 0; j < n; ++j) {
      if (h.rho[h.product(i, j)] > h.rho[i] + h.rho[j] + tol) record({NormViolation::Kind::kSubadditivity, i, j});
    }
  }
  return report;
}

NormApproximation approximate_seminorm(const Group& group, const Seminorm& s, const GenSet& a, double epsilon,
                                       const Caps& caps) {
  const GenSet window_set = symmetrize(a);
  const FiniteModel model =
      build_model(group, seminorm_to_window(group, s, window_set), epsilon, {ModelMode::kMaterialized, caps});

  const auto carrier = model.carrier_elements();
  std::unordered_map<FiniteElement, std::size_t> index;
  for (std::size_t i = 0; i < carrier.size(); ++i) index.emplace(carrier[i], i);

  NormApproximation out;
  out.params = model.params();
  auto& h = out.group;
  h.identity = 0;
  h.mul.resize(carrier.size() * carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    h.elements.push_back(finite_to_json(carrier[i]).dump());
    for (std::size_t j = 0; j < carrier.size(); ++j) h.mul[i * carrier.size() + j] = index.at(carrier[i] * carrier[j]);
  }
  // With X0 = {e}, vertex ids coincide with carrier indices.
  for (std::size_t i = 0; i < carrier.size(); ++i) h.rho.push_back(model.distance(i, h.identity));

  std::vector<GroupElement> mapped(window_set.begin(), window_set.end());
  for (const auto& g : group.generators()) mapped.push_back(g);
  for (const auto& g : mapped) out.phi.emplace(element_text(g), index.at(model.quotient().apply(g)));
  for (const auto& g : window_set) {
    const double value = s(group, g);
    const double rho = h.rho[out.phi.at(element_text(g))];
    out.samples.push_back({g, value, rho});
    out.max_deviation = std::max(out.max_deviation, std::abs(rho - value));
  }
  return out;
}

}  // namespace finact
