// Shared fixtures for the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "finact/action.hpp"
#include "finact/model.hpp"
#include "finact/path_metric.hpp"
#include "finact/quotient.hpp"

namespace finact::testing {

inline GroupElement z(std::int64_t v) { return GroupElement::lattice({v}); }
inline GroupElement w(std::vector<int> letters) { return GroupElement::free_word(std::move(letters)); }

/// Z acting on R by translation, A = {-1, 0, 1}, X0 = {0}.
inline SampledAction integer_window(std::vector<std::int64_t> a = {-1, 0, 1}, std::vector<double> x0 = {0.0}) {
  const Group g = Group::lattice(1);
  const auto action = make_builtin_action(g, {ActionSpec::Kind::kTranslation, std::nullopt});
  std::vector<GroupElement> elems;
  for (const auto v : a) elems.push_back(z(v));
  std::vector<Point> points;
  for (const double x : x0) points.emplace_back(std::vector<double>{x});
  return sample_action(*action, symmetrize(GenSet(elems)), points);
}

struct Instance {
  std::string name;
  Group group;
  SampledAction window;
  double epsilon = 1.0;
};

/// Random lattice or finite-cyclic instance: |sym(A)| <= 7, |X0| <= 3.
inline Instance random_instance(std::mt19937_64& rng, int serial) {
  std::uniform_int_distribution<int> coin(0, 2);
  const double eps_choices[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  Instance inst;
  inst.epsilon = eps_choices[std::uniform_int_distribution<int>(0, 4)(rng)];
  const int flavour = coin(rng);
  const int gens = std::uniform_int_distribution<int>(1, 3)(rng);
  const int points = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<GroupElement> a;
  std::vector<Point> x0;
  ActionSpec spec;
  if (flavour == 0) {
    const int dim = std::uniform_int_distribution<int>(1, 2)(rng);
    inst.group = Group::lattice(dim);
    spec.kind = ActionSpec::Kind::kTranslation;
    std::uniform_int_distribution<std::int64_t> c(-1, 1);
    for (int i = 0; i < gens; ++i) {
      std::vector<std::int64_t> v(dim);
      for (auto& x : v) x = c(rng);
      a.push_back(GroupElement::lattice(v));
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < points; ++i) {
      std::vector<double> p(dim);
      for (auto& x : p) x = std::round(u(rng) * 4.0) / 4.0;
      x0.emplace_back(p);
    }
  } else {
    const bool lattice = flavour == 1;
    inst.group = lattice ? Group::lattice(1) : Group::cyclic(std::uniform_int_distribution<int>(2, 40)(rng));
    spec.kind = coin(rng) == 0 ? ActionSpec::Kind::kLeftDiscrete : ActionSpec::Kind::kLeftWord;
    std::uniform_int_distribution<std::int64_t> c(-2, 2);
    const auto elem = [&](std::int64_t v) {
      return lattice ? z(v) : GroupElement::cyclic(((v % inst.group.order()) + inst.group.order()) % inst.group.order(),
                                                   inst.group.order());
    };
    for (int i = 0; i < gens; ++i) a.push_back(elem(c(rng)));
    for (int i = 0; i < points; ++i) x0.emplace_back(elem(c(rng)));
  }
  const auto action = make_builtin_action(inst.group, spec);
  // Duplicate points would collapse; keep first occurrences.
  std::vector<Point> unique;
  std::vector<std::string> seen;
  for (const auto& p : x0) {
    const std::string label = point_label(p);
    if (std::find(seen.begin(), seen.end(), label) == seen.end()) {
      seen.push_back(label);
      unique.push_back(p);
    }
  }
  GenSet sym = symmetrize(GenSet(a));
  while (sym.size() > 7) {
    a.pop_back();
    sym = symmetrize(GenSet(a));
  }
  inst.window = sample_action(*action, sym, unique);
  inst.name = std::string(family_name(inst.group.family())) + "#" + std::to_string(serial);
  return inst;
}

/// Order of the finite target of a quotient.
inline std::size_t target_order(const FiniteQuotient& q) {
  switch (q.kind()) {
    case FiniteQuotient::Kind::kLattice: {
      std::size_t n = 1;
      for (int i = 0; i < q.source().dim(); ++i) n *= static_cast<std::size_t>(q.modulus());
      return n;
    }
    case FiniteQuotient::Kind::kIdentity: return static_cast<std::size_t>(q.source().order());
    default: return 0;
  }
}

/// Independent oracle: the model graph on the whole finite target times X0,
/// closed with Floyd–Warshall.
struct OracleGraph {
  std::vector<FiniteElement> elements;
  std::unordered_map<FiniteElement, std::size_t> position;
  std::size_t points = 0;
  DistanceMatrix dist;

  std::size_t id(const FiniteElement& q, std::size_t x) const { return position.at(q) * points + x; }
};

inline OracleGraph full_oracle(const Group& group, const FiniteQuotient& q, const SampledAction& sa, double epsilon) {
  OracleGraph out;
  std::vector<GroupElement> gens = group.generators();
  gens.insert(gens.end(), sa.a.begin(), sa.a.end());
  out.elements = enumerate_image(q, gens, 100000);
  std::sort(out.elements.begin(), out.elements.end());
  for (std::size_t i = 0; i < out.elements.size(); ++i) out.position.emplace(out.elements[i], i);
  out.points = sa.x0.size();
  MaterializedGraph graph(out.elements.size() * out.points);
  const std::size_t n = sa.size();
  for (std::size_t vi = 0; vi < out.elements.size(); ++vi) {
    for (std::size_t g = 0; g < sa.a.size(); ++g) {
      for (std::size_t h = 0; h < sa.a.size(); ++h) {
        const FiniteElement target = out.elements[vi] * inverse(q.apply(sa.a[g])) * q.apply(sa.a[h]);
        for (std::size_t x = 0; x < out.points; ++x) {
          for (std::size_t y = 0; y < out.points; ++y) {
            const std::size_t i = sa.index(g, x);
            const std::size_t j = sa.index(h, y);
            const double weight = sa.kappa[i * n + j] + (i == j ? 0.0 : epsilon);
            graph.add_edge(vi * out.points + x, out.id(target, y), weight);
          }
        }
      }
    }
  }
  out.dist = all_pairs_oracle(graph, 4000);
  return out;
}

}  // namespace finact::testing
