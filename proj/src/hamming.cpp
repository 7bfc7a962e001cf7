#include "finact/hamming.hpp"

#include <unordered_map>

#include "finact/error.hpp"

namespace finact {

double hamming_length(const Permutation& sigma) {
  if (sigma.degree() == 0) return 0.0;
  return static_cast<double>(sigma.moved_points()) / static_cast<double>(sigma.degree());
}

double hamming_distance(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw InputError("hamming distance needs permutations of equal degree");
  return hamming_length(sigma.inverse() * tau);
}

Permutation regular_permutation(std::span<const FiniteElement> elements, const FiniteElement& q) {
  std::unordered_map<FiniteElement, std::uint32_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<std::uint32_t>(i));
  std::vector<std::uint32_t> images;
  images.reserve(elements.size());
  for (const auto& p : elements) {
    const auto it = index.find(q * p);
    if (it == index.end()) throw InputError("element list is not closed under multiplication");
    images.push_back(it->second);
  }
  return Permutation(std::move(images));
}

DemoResult left_right_demo(const DemoConfig& config) {
  const auto rank = static_cast<int>(config.hom.gen_images.size());
  if (rank < 1) throw InputError("demo hom needs at least one generator image");
  if (config.a_f.empty()) throw InputError("demo needs a nonempty A_F");
  const Group free = Group::free(rank);
  for (const auto& g : config.a_f) {
    if (!free.contains(g)) throw InputError("A_F element " + element_text(g) + " is not in F_" + std::to_string(rank));
  }
  const Group group = Group::product(free, free);
  const auto action = make_builtin_action(group, {ActionSpec::Kind::kLeftRight, config.hom});

  std::vector<GroupElement> pairs;
  for (const auto& g : config.a_f) {
    for (const auto& h : config.a_f) pairs.push_back(GroupElement::product(g, h));
  }
  const GenSet a = symmetrize(GenSet(std::move(pairs)));
  const std::vector<Point> x0{action->base_point()};
  SampledAction window = sample_action(*action, a, x0);
  const SampledAction copy = window;
  FiniteModel model = build_model(group, std::move(window), config.epsilon, {config.mode, config.caps});
  VerificationReport report = verify_model(model, copy, config.epsilon, config.tol);
  return {std::move(model), std::move(report)};
}

}  // namespace finact
