#pragma once

#include <span>
#include <vector>

#include "finact/action.hpp"
#include "finact/caps.hpp"
#include "finact/model.hpp"
#include "finact/permutation.hpp"
#include "finact/quotient.hpp"

namespace finact {

/// Fraction of points moved by σ; 0 for the empty permutation.
double hamming_length(const Permutation& sigma);

/// ℓ(σ⁻¹τ). Throws InputError on a degree mismatch.
double hamming_distance(const Permutation& sigma, const Permutation& tau);

/// Left-regular representation: the permutation p_i ↦ q·p_i of an enumerated
/// finite group listed in `elements`.
Permutation regular_permutation(std::span<const FiniteElement> elements, const FiniteElement& q);

struct DemoConfig {
  HomTable hom;
  std::vector<GroupElement> a_f;  // elements of F_r
  double epsilon = 1.0;
  ModelMode mode = ModelMode::kLazy;
  Caps caps;
  double tol = 1e-9;

  bool operator==(const DemoConfig&) const = default;
};

struct DemoResult {
  FiniteModel model;
  VerificationReport report;
};

/// F_r x F_r acting on (Q, δ) by (g,h).x = π(g) x π(h)⁻¹, windowed at
/// A = sym(A_F x A_F) and X0 = {e_Q}, then modelled and verified.
DemoResult left_right_demo(const DemoConfig& config);

}  // namespace finact
