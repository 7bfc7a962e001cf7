#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "finact/error.hpp"
#include "finact/hamming.hpp"
#include "support.hpp"

using namespace finact;
using finact::testing::w;

namespace {

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST_CASE("hamming length formulas") {
  CHECK(hamming_length(Permutation::identity(7)) == 0.0);
  CHECK(hamming_length(Permutation({1, 0, 2, 3})) == 0.5);
  CHECK(hamming_length(Permutation({1, 2, 3, 4, 0})) == 1.0);
  CHECK(hamming_distance(Permutation::identity(6), Permutation({0, 1, 2, 3, 5, 4})) == 2.0 / 6.0);
  CHECK_THROWS_AS(hamming_distance(Permutation::identity(2), Permutation::identity(3)), InputError);
  CHECK_THROWS_AS(Permutation({0, 0}), InputError);
}

TEST_CASE("property: hamming metric is bi-invariant and subadditive") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const auto s = random_perm(rng, 8);
    const auto u = random_perm(rng, 8);
    const auto r = random_perm(rng, 8);
    const auto l = random_perm(rng, 8);
    CHECK(hamming_distance(r * s * l, r * u * l) == hamming_distance(s, u));
    CHECK(hamming_length(s.inverse()) == hamming_length(s));
    CHECK(hamming_length(s * u) <= hamming_length(s) + hamming_length(u));
  }
}

TEST_CASE("regular representation") {
  const FiniteQuotient q = lattice_quotient_with_modulus(1, 6);
  const std::vector<GroupElement> gens{finact::testing::z(1)};
  const auto elems = enumerate_image(q, gens, 100);
  const auto p = regular_permutation(elems, q.apply(finact::testing::z(2)));
  CHECK(hamming_length(p) == 1.0);
  CHECK(regular_permutation(elems, q.identity()).is_identity());
}

TEST_CASE("left-right demo") {
  DemoConfig config;
  config.hom = {Group::cyclic(2), {GroupElement::cyclic(1, 2)}};
  config.a_f = {w({}), w({1}), w({-1})};
  config.epsilon = 1.0;
  const DemoResult result = left_right_demo(config);
  CHECK(result.report.pass);
  CHECK(result.report.max_deviation <= 1.0 + 1e-9);
  CHECK(result.model.metric().base.a.size() == 9);
  const auto& sa = result.model.metric().base;
  // κ((g,g),(e,e)) = 0 and κ = 1 when π(g) ≠ π(h).
  const auto e = sa.a.index_of(GroupElement::product(w({}), w({})));
  const auto gg = sa.a.index_of(GroupElement::product(w({1}), w({1})));
  const auto ge = sa.a.index_of(GroupElement::product(w({1}), w({})));
  CHECK(sa(gg, e) == 0.0);
  CHECK(sa(ge, e) == 1.0);

  config.mode = ModelMode::kMaterialized;
  config.caps.max_quotient_order = 100;
  CHECK_THROWS_AS(left_right_demo(config), BudgetExceeded);
}
