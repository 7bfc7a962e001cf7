#include <random>
#include <set>

#include "doctest.h"
#include "finact/error.hpp"
#include "finact/quotient.hpp"
#include "support.hpp"

using namespace finact;
using finact::testing::w;
using finact::testing::z;

namespace {

const Permutation& perm_of(const FiniteElement& q) { return std::get<Permutation>(q.components.at(0)); }

std::vector<std::uint32_t> images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

// All reduced words of length <= n over F_rank.
std::vector<GroupElement> words_up_to(int rank, int n) {
  const GenSet s = symmetrize(GenSet(Group::free(rank).generators()));
  const GenSet ball = product_set(s, n, 1u << 22);
  return {ball.begin(), ball.end()};
}

}  // namespace

TEST_CASE("lattice quotient moduli") {
  const GenSet b = product_set(symmetrize(GenSet({z(1)})), 6, 1000);
  const FiniteQuotient q = lattice_quotient(1, b);
  CHECK(q.modulus() == 13);
  const auto report = check_injective(q, b, 1000);
  CHECK(report.injective());
  CHECK(report.set_size == 13);
  CHECK(report.pairs_checked == 78);
  CHECK(finite_to_json(q.apply(z(-6))) == nlohmann::json::array({7}));

  const Group z2 = Group::lattice(2);
  const GenSet b2 = product_set(symmetrize(GenSet(z2.generators())), 3, 1000);
  CHECK(lattice_quotient(2, b2).modulus() == 7);
  CHECK(quotient_for(z2, symmetrize(GenSet(z2.generators())), 3, Caps{}).modulus() == 7);
}

TEST_CASE("Z -> Z/12 collides on -6 and 6") {
  const GenSet b = product_set(symmetrize(GenSet({z(1)})), 6, 1000);
  const auto report = check_injective(lattice_quotient_with_modulus(1, 12), b, 1000);
  REQUIRE(report.collisions.size() == 1);
  const std::set<GroupElement, ShortlexLess> pair{report.collisions[0].first, report.collisions[0].second};
  CHECK(pair == std::set<GroupElement, ShortlexLess>{z(-6), z(6)});
}

TEST_CASE("free ball permutations") {
  SUBCASE("rank 1, radius 2 gives a 5-cycle") {
    const FiniteQuotient q = free_ball_quotient(1, 2, 1000);
    REQUIRE(q.ball_size() == 5);
    // e, a, a^-1, a^2, a^-2
    CHECK(images(q.generator_image(1)) == std::vector<std::uint32_t>{1, 3, 0, 4, 2});
  }
  SUBCASE("rank 2, radius 1") {
    const FiniteQuotient q = free_ball_quotient(2, 1, 1000);
    // e, a, a^-1, b, b^-1: a swaps to the unmatched points in order.
    CHECK(images(q.generator_image(1)) == std::vector<std::uint32_t>{1, 2, 0, 3, 4});
  }
  CHECK(free_ball_size(2, 8) == 13121);
  CHECK(free_ball_size(3, 0) == 1);
  CHECK(free_ball_size(1, 5) == 11);
}

TEST_CASE("quotient_for picks R = 2kL for free groups") {
  const Group f2 = Group::free(2);
  const GenSet a = symmetrize(GenSet(f2.generators()));
  const FiniteQuotient q = quotient_for(f2, a, 4, Caps{});
  CHECK(q.radius() == 8);
  CHECK(q.ball_size() == 13121);
  CHECK(q.descriptor() == nlohmann::json::parse(R"({"kind":"free-ball","radius":8,"ball_size":13121})"));
  const GenSet longer = symmetrize(GenSet({w({1, 2}), w({2})}));
  CHECK(quotient_for(f2, longer, 2, Caps{}).radius() == 8);
  Caps tight;
  tight.max_ball = 1000;
  CHECK_THROWS_AS(quotient_for(f2, a, 4, tight), BudgetExceeded);
}

TEST_CASE("free ball basepoint property for |w| <= 6 at R = 6") {
  const FiniteQuotient q = free_ball_quotient(2, 6, 100000);
  const auto words = words_up_to(2, 6);
  CHECK(words.size() == free_ball_size(2, 6));
  for (const auto& g : words) {
    const auto idx = q.ball_index(g);
    REQUIRE(idx.has_value());
    CHECK(perm_of(q.apply(g))(0) == *idx);
  }
}

TEST_CASE("property: quotients are homomorphisms") {
  std::mt19937_64 rng(11);
  const FiniteQuotient ball = free_ball_quotient(2, 3, 10000);
  const FiniteQuotient lat = lattice_quotient_with_modulus(2, 9);
  std::uniform_int_distribution<int> letter(1, 2);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<std::int64_t> coord(-40, 40);
  std::bernoulli_distribution sign(0.5);
  const auto word = [&] {
    std::vector<int> l(static_cast<std::size_t>(len(rng)));
    for (auto& x : l) x = sign(rng) ? letter(rng) : -letter(rng);
    return w(l);
  };
  for (int t = 0; t < 1000; ++t) {
    const auto g = word();
    const auto h = word();
    CHECK(ball.apply(multiply(g, h)) == ball.apply(g) * ball.apply(h));
    const auto u = GroupElement::lattice({coord(rng), coord(rng)});
    const auto v = GroupElement::lattice({coord(rng), coord(rng)});
    CHECK(lat.apply(multiply(u, v)) == lat.apply(u) * lat.apply(v));
  }
}

TEST_CASE("identity and product quotients") {
  const Group c5 = Group::cyclic(5);
  const FiniteQuotient id = identity_quotient(c5);
  CHECK(finite_to_json(id.apply(GroupElement::cyclic(3, 5))) == nlohmann::json::array({3}));
  const Group prod = Group::product(Group::lattice(1), c5);
  const GenSet a = symmetrize(GenSet({GroupElement::product(z(1), GroupElement::cyclic(1, 5))}));
  const FiniteQuotient q = quotient_for(prod, a, 3, Caps{});
  CHECK(q.kind() == FiniteQuotient::Kind::kProduct);
  CHECK(check_injective(q, q.certified_set(100000), 100000).injective());
}

TEST_CASE("image enumeration") {
  const FiniteQuotient q = lattice_quotient_with_modulus(1, 13);
  const std::vector<GroupElement> gens{z(1)};
  const auto image = enumerate_image(q, gens, 100);
  CHECK(image.size() == 13);
  CHECK(image.front().is_identity());
  CHECK_THROWS_AS(enumerate_image(q, gens, 12), BudgetExceeded);

  const Group f2 = Group::free(2);
  const FiniteQuotient big = quotient_for(f2, symmetrize(GenSet(f2.generators())), 4, Caps{});
  const auto f2_gens = f2.generators();
  CHECK_THROWS_AS(enumerate_image(big, f2_gens, 1000), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_image(big, f2_gens, 1u << 30, 1u << 20), BudgetExceeded);
}

TEST_CASE("property: certificates hold on random windows") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const auto inst = finact::testing::random_instance(rng, t);
    for (int k = 2; k <= 4; ++k) {
      const FiniteQuotient q = quotient_for(inst.group, inst.window.a, k, Caps{});
      CHECK_MESSAGE(check_injective(q, q.certified_set(1u << 20), 1u << 20).injective(), inst.name);
    }
  }
}
