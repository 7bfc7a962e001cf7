#include "finact/quotient.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <limits>
#include <unordered_map>

#include "finact/error.hpp"

namespace finact {
namespace {

template <typename T>
void append_bytes(std::string& out, const T& value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

std::string word_key(const std::vector<int>& letters) {
  std::string out;
  out.reserve(letters.size() * sizeof(std::int32_t));
  for (const int l : letters) append_bytes(out, static_cast<std::int32_t>(l));
  return out;
}

std::vector<int> letters_in_order(int rank) {
  std::vector<int> out;
  for (int i = 1; i <= rank; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

std::int64_t magnitude(std::int64_t c) {
  if (c == std::numeric_limits<std::int64_t>::min()) throw InputError("lattice coordinate overflow");
  return c < 0 ? -c : c;
}

std::int64_t reduce_mod(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

bool FiniteElement::is_identity() const {
  for (const auto& c : components) {
    if (const auto* r = std::get_if<Residues>(&c)) {
      if (std::any_of(r->values.begin(), r->values.end(), [](auto v) { return v != 0; })) return false;
    } else if (!std::get<Permutation>(c).is_identity()) {
      return false;
    }
  }
  return true;
}

std::string FiniteElement::encode() const {
  std::string out;
  for (const auto& c : components) {
    if (const auto* r = std::get_if<Residues>(&c)) {
      out.push_back('r');
      append_bytes(out, r->modulus);
      append_bytes(out, static_cast<std::uint64_t>(r->values.size()));
      for (const auto v : r->values) append_bytes(out, v);
    } else {
      const auto& p = std::get<Permutation>(c);
      out.push_back('p');
      append_bytes(out, static_cast<std::uint64_t>(p.degree()));
      for (const auto v : p.images()) append_bytes(out, v);
    }
  }
  return out;
}

std::size_t FiniteElement::byte_size() const {
  std::size_t total = sizeof(FiniteElement);
  for (const auto& c : components) {
    if (const auto* r = std::get_if<Residues>(&c)) {
      total += sizeof(FiniteComponent) + r->values.size() * sizeof(std::int64_t);
    } else {
      total += sizeof(FiniteComponent) + std::get<Permutation>(c).degree() * sizeof(std::uint32_t);
    }
  }
  return total;
}

FiniteElement operator*(const FiniteElement& a, const FiniteElement& b) {
  if (a.components.size() != b.components.size()) throw FamilyMismatch("finite element shape mismatch");
  FiniteElement out;
  out.components.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto& x = a.components[i];
    const auto& y = b.components[i];
    if (x.index() != y.index()) throw FamilyMismatch("finite element shape mismatch");
    if (const auto* rx = std::get_if<Residues>(&x)) {
      const auto& ry = std::get<Residues>(y);
      if (rx->modulus != ry.modulus || rx->values.size() != ry.values.size()) {
        throw FamilyMismatch("residue modulus mismatch");
      }
      Residues r{rx->modulus, std::vector<std::int64_t>(rx->values.size())};
      for (std::size_t j = 0; j < r.values.size(); ++j) {
        // Entries lie in [0, modulus) with modulus < 2^62, so the sum fits.
        r.values[j] = (rx->values[j] + ry.values[j]) % r.modulus;
      }
      out.components.emplace_back(std::move(r));
    } else {
      out.components.emplace_back(std::get<Permutation>(x) * std::get<Permutation>(y));
    }
  }
  return out;
}

FiniteElement inverse(const FiniteElement& a) {
  FiniteElement out;
  out.components.reserve(a.components.size());
  for (const auto& c : a.components) {
    if (const auto* r = std::get_if<Residues>(&c)) {
      Residues inv{r->modulus, r->values};
      for (auto& v : inv.values) v = v == 0 ? 0 : r->modulus - v;
      out.components.emplace_back(std::move(inv));
    } else {
      out.components.emplace_back(std::get<Permutation>(c).inverse());
    }
  }
  return out;
}

nlohmann::json finite_to_json(const FiniteElement& q) {
  const auto component = [](const FiniteComponent& c) -> nlohmann::json {
    if (const auto* r = std::get_if<Residues>(&c)) return r->values;
    const auto images = std::get<Permutation>(c).images();
    return std::vector<std::uint32_t>(images.begin(), images.end());
  };
  if (q.components.size() == 1) return component(q.components[0]);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : q.components) out.push_back(component(c));
  return out;
}

struct FiniteQuotient::Ball {
  int rank = 0;
  std::vector<std::vector<int>> words;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Permutation> generator_images;  // positive generators, 0-based
  std::vector<Permutation> inverse_images;
};

std::size_t FiniteQuotient::ball_size() const { return ball_ ? ball_->words.size() : 0; }

std::span<const std::vector<int>> FiniteQuotient::ball() const {
  if (!ball_) return {};
  return ball_->words;
}

std::optional<std::size_t> FiniteQuotient::ball_index(const GroupElement& w) const {
  if (!ball_ || w.family() != Family::kFree) return std::nullopt;
  const auto it = ball_->index.find(word_key(w.word().letters));
  if (it == ball_->index.end()) return std::nullopt;
  return it->second;
}

const Permutation& FiniteQuotient::generator_image(int i) const {
  if (!ball_ || i < 1 || i > ball_->rank) throw InputError("generator index out of range");
  return ball_->generator_images[static_cast<std::size_t>(i - 1)];
}

FiniteElement FiniteQuotient::identity() const {
  switch (kind_) {
    case Kind::kLattice:
      return {{Residues{modulus_, std::vector<std::int64_t>(static_cast<std::size_t>(source_.dim()), 0)}}};
    case Kind::kFreeBall: return {{Permutation::identity(ball_size())}};
    case Kind::kIdentity:
      if (source_.family() == Family::kCyclic) return {{Residues{source_.order(), {0}}}};
      return {{Permutation::identity(static_cast<std::size_t>(source_.degree()))}};
    case Kind::kProduct: {
      FiniteElement out = factors_[0].identity();
      for (auto& c : factors_[1].identity().components) out.components.push_back(std::move(c));
      return out;
    }
  }
  return {};
}

FiniteElement FiniteQuotient::apply(const GroupElement& g) const {
  if (!source_.contains(g)) {
    throw FamilyMismatch("element " + element_text(g) + " is not in the quotient source group");
  }
  switch (kind_) {
    case Kind::kLattice: {
      Residues r{modulus_, {}};
      for (const auto c : g.vec().coords) r.values.push_back(reduce_mod(c, modulus_));
      return {{std::move(r)}};
    }
    case Kind::kFreeBall: {
      Permutation acc = Permutation::identity(ball_size());
      for (const int l : g.word().letters) {
        const auto idx = static_cast<std::size_t>(std::abs(l) - 1);
        acc = acc * (l > 0 ? ball_->generator_images[idx] : ball_->inverse_images[idx]);
      }
      return {{std::move(acc)}};
    }
    case Kind::kIdentity:
      if (g.family() == Family::kCyclic) return {{Residues{g.residue().order, {g.residue().value}}}};
      return {{g.permutation()}};
    case Kind::kProduct: {
      FiniteElement out = factors_[0].apply(g.first());
      for (auto& c : factors_[1].apply(g.second()).components) out.components.push_back(std::move(c));
      return out;
    }
  }
  return {};
}

nlohmann::json FiniteQuotient::descriptor() const {
  switch (kind_) {
    case Kind::kLattice: return {{"kind", "lattice"}, {"modulus", modulus_}};
    case Kind::kFreeBall: return {{"kind", "free-ball"}, {"radius", radius_}, {"ball_size", ball_size()}};
    case Kind::kIdentity: return {{"kind", "identity"}};
    case Kind::kProduct:
      return {{"kind", "product"},
              {"factors", nlohmann::json::array({factors_[0].descriptor(), factors_[1].descriptor()})}};
  }
  return nullptr;
}

GenSet FiniteQuotient::certified_set(std::size_t cap) const {
  if (cert_generators_.empty()) return {};
  return product_set(cert_generators_, cert_power_, cap);
}

FiniteQuotient lattice_quotient_with_modulus(int dim, std::int64_t modulus) {
  if (modulus < 1) throw InputError("lattice quotient modulus must be positive");
  FiniteQuotient q;
  q.kind_ = FiniteQuotient::Kind::kLattice;
  q.source_ = Group::lattice(dim);
  q.modulus_ = modulus;
  return q;
}

FiniteQuotient lattice_quotient(int dim, const GenSet& b) {
  std::int64_t widest = 0;
  for (const auto& g : b) {
    if (g.family() != Family::kLattice || g.vec().coords.size() != static_cast<std::size_t>(dim)) {
      throw FamilyMismatch("lattice_quotient expects elements of Z^" + std::to_string(dim));
    }
    for (const auto c : g.vec().coords) widest = std::max(widest, magnitude(c));
  }
  if (widest > (std::numeric_limits<std::int64_t>::max() - 1) / 2) {
    throw InputError("lattice quotient modulus overflows");
  }
  FiniteQuotient q = lattice_quotient_with_modulus(dim, 2 * widest + 1);
  q.set_certificate(b, 1);
  return q;
}

std::size_t free_ball_size(int rank, int radius) {
  if (rank < 1 || radius < 0) throw InputError("free ball needs rank >= 1 and radius >= 0");
  // 1 + 2r * sum_{i<R} (2r-1)^i, saturating at SIZE_MAX.
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  const std::size_t branch = 2 * static_cast<std::size_t>(rank) - 1;
  std::size_t total = 1;
  std::size_t layer = 2 * static_cast<std::size_t>(rank);
  for (int i = 1; i <= radius; ++i) {
    if (total > kMax - layer) return kMax;
    total += layer;
    if (i < radius) {
      if (layer > kMax / branch) return kMax;
      layer *= branch;
    }
  }
  return total;
}

FiniteQuotient free_ball_quotient(int rank, int radius, std::size_t max_ball) {
  if (rank < 1) throw InputError("free_ball_quotient requires rank >= 1");
  if (radius < 1) throw InputError("free_ball_quotient requires radius >= 1");
  const std::size_t size = free_ball_size(rank, radius);
  if (size > max_ball) {
    throw BudgetExceeded("free ball of rank " + std::to_string(rank) + " and radius " +
                         std::to_string(radius) + " has " + std::to_string(size) +
                         " words, above cap " + std::to_string(max_ball));
  }

  auto ball = std::make_shared<FiniteQuotient::Ball>();
  ball->rank = rank;
  ball->words.reserve(size);
  ball->words.emplace_back();
  const std::vector<int> letters = letters_in_order(rank);
  // Extending each word of a shortlex-sorted layer by letters in key order keeps
  // the next layer sorted.
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = ball->words.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const int l : letters) {
        const auto& w = ball->words[i];
        if (!w.empty() && w.back() == -l) continue;
        std::vector<int> next = w;
        next.push_back(l);
        ball->words.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  for (std::size_t i = 0; i < ball->words.size(); ++i) ball->index.emplace(word_key(ball->words[i]), i);

  for (int s = 1; s <= rank; ++s) {
    std::vector<std::uint32_t> images(size, 0);
    std::vector<bool> hit(size, false);
    std::vector<std::size_t> unmatched_domain;
    for (std::size_t i = 0; i < size; ++i) {
      const auto& w = ball->words[i];
      std::vector<int> sw;
      if (!w.empty() && w.front() == -s) {
        sw.assign(w.begin() + 1, w.end());
      } else if (static_cast<int>(w.size()) < radius) {
        sw.reserve(w.size() + 1);
        sw.push_back(s);
        sw.insert(sw.end(), w.begin(), w.end());
      } else {
        unmatched_domain.push_back(i);
        continue;
      }
      const std::size_t j = ball->index.at(word_key(sw));
      images[i] = static_cast<std::uint32_t>(j);
      hit[j] = true;
    }
    std::vector<std::size_t> unmatched_codomain;
    for (std::size_t j = 0; j < size; ++j) {
      if (!hit[j]) unmatched_codomain.push_back(j);
    }
    for (std::size_t t = 0; t < unmatched_domain.size(); ++t) {
      images[unmatched_domain[t]] = static_cast<std::uint32_t>(unmatched_codomain[t]);
    }
    Permutation sigma(std::move(images));
    ball->inverse_images.push_back(sigma.inverse());
    ball->generator_images.push_back(std::move(sigma));
  }

  FiniteQuotient q;
  q.kind_ = FiniteQuotient::Kind::kFreeBall;
  q.source_ = Group::free(rank);
  q.radius_ = radius;
  q.ball_ = std::move(ball);
  return q;
}

FiniteQuotient identity_quotient(const Group& finite_group) {
  if (finite_group.family() != Family::kCyclic && finite_group.family() != Family::kPerm) {
    throw FamilyMismatch("identity quotient needs a finite group");
  }
  FiniteQuotient q;
  q.kind_ = FiniteQuotient::Kind::kIdentity;
  q.source_ = finite_group;
  return q;
}

FiniteQuotient product_quotient(const FiniteQuotient& q1, const FiniteQuotient& q2) {
  FiniteQuotient q;
  q.kind_ = FiniteQuotient::Kind::kProduct;
  q.source_ = Group::product(q1.source(), q2.source());
  q.factors_ = {q1, q2};
  if (!q1.certified_generators().empty() && !q2.certified_generators().empty() &&
      q1.certified_power() == q2.certified_power()) {
    // B1^k x B2^k = (B1 x B2)^k when both factors contain the identity.
    std::vector<GroupElement> pairs;
    for (const auto& a : q1.certified_generators()) {
      for (const auto& b : q2.certified_generators()) pairs.push_back(GroupElement::product(a, b));
    }
    q.set_certificate(GenSet(std::move(pairs)), q1.certified_power());
  }
  return q;
}

FiniteQuotient quotient_for(const Group& group, const GenSet& a, int k, const Caps& caps) {
  if (k < 1) throw InputError("quotient_for requires k >= 1");
  for (const auto& g : a) {
    if (!group.contains(g)) throw FamilyMismatch("element " + element_text(g) + " is not in the group");
  }
  FiniteQuotient q;
  switch (group.family()) {
    case Family::kLattice: {
      std::int64_t widest = 0;
      for (const auto& g : a) {
        for (const auto c : g.vec().coords) widest = std::max(widest, magnitude(c));
      }
      if (widest > 0 && widest > (std::numeric_limits<std::int64_t>::max() / 2 - 1) / k) {
        throw InputError("lattice quotient modulus overflows");
      }
      q = lattice_quotient_with_modulus(group.dim(), 2 * static_cast<std::int64_t>(k) * widest + 1);
      break;
    }
    case Family::kFree: {
      std::size_t longest = 0;
      for (const auto& g : a) longest = std::max(longest, g.word().letters.size());
      const std::size_t radius = std::max<std::size_t>(1, 2 * static_cast<std::size_t>(k) * longest);
      if (radius > 64) {
        throw BudgetExceeded("free ball radius " + std::to_string(radius) + " is beyond any feasible cap");
      }
      q = free_ball_quotient(group.rank(), static_cast<int>(radius), caps.max_ball);
      break;
    }
    case Family::kCyclic:
    case Family::kPerm: q = identity_quotient(group); break;
    case Family::kProduct: {
      std::vector<GroupElement> left;
      std::vector<GroupElement> right;
      for (const auto& g : a) {
        left.push_back(g.first());
        right.push_back(g.second());
      }
      if (a.empty()) {
        left.push_back(group.factor(0).identity());
        right.push_back(group.factor(1).identity());
      }
      q = product_quotient(quotient_for(group.factor(0), GenSet(std::move(left)), k, caps),
                           quotient_for(group.factor(1), GenSet(std::move(right)), k, caps));
      break;
    }
  }
  q.set_certificate(a, k);
  return q;
}

InjectivityReport check_injective(const FiniteQuotient& q, const GenSet& b, std::size_t cap) {
  if (b.size() > cap) {
    throw BudgetExceeded("injectivity check on " + std::to_string(b.size()) + " elements exceeds cap " +
                         std::to_string(cap));
  }
  InjectivityReport report;
  report.set_size = b.size();
  report.pairs_checked = b.size() * (b.size() - (b.empty() ? 0 : 1)) / 2;
  std::unordered_map<FiniteElement, std::vector<std::size_t>> fibres;
  std::vector<const std::vector<std::size_t>*> order;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto [it, inserted] = fibres.try_emplace(q.apply(b[i]));
    it->second.push_back(i);
    if (inserted) order.push_back(&it->second);
  }
  for (const auto* fibre : order) {
    for (std::size_t s = 0; s < fibre->size(); ++s) {
      for (std::size_t t = s + 1; t < fibre->size(); ++t) {
        report.collisions.emplace_back(b[(*fibre)[s]], b[(*fibre)[t]]);
      }
    }
  }
  return report;
}

std::vector<FiniteElement> enumerate_image(const FiniteQuotient& q, std::span<const GroupElement> generators,
                                           std::size_t cap, std::size_t max_bytes) {
  if (cap == 0) throw InputError("enumerate_image requires cap > 0");
  std::vector<FiniteElement> steps;
  for (const auto& g : generators) {
    FiniteElement s = q.apply(g);
    if (!s.is_identity() && std::find(steps.begin(), steps.end(), s) == steps.end()) {
      steps.push_back(std::move(s));
    }
  }
  std::vector<FiniteElement> elements{q.identity()};
  std::unordered_map<FiniteElement, std::size_t> seen{{elements.front(), 0}};
  std::size_t bytes = 2 * elements.front().byte_size();
  const std::string advice = "; the quotient image is too large to enumerate, use lazy mode";
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : steps) {
      FiniteElement next = elements[head] * s;
      if (seen.contains(next)) continue;
      if (elements.size() + 1 > cap) {
        throw BudgetExceeded("image closure exceeds cap " + std::to_string(cap) + advice);
      }
      bytes += 2 * next.byte_size() + 32;
      if (bytes > max_bytes) {
        throw BudgetExceeded("image closure exceeds memory budget of " + std::to_string(max_bytes) +
                             " bytes after " + std::to_string(elements.size()) + " elements" + advice);
      }
      seen.emplace(next, elements.size());
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

}  // namespace finact

std::size_t std::hash<finact::FiniteElement>::operator()(const finact::FiniteElement& q) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : q.components) {
    if (const auto* r = std::get_if<finact::Residues>(&c)) {
      h = (h ^ static_cast<std::size_t>(r->modulus)) * 0x100000001b3ULL;
      for (const auto v : r->values) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    } else {
      h = (h ^ finact::hash_value(std::get<finact::Permutation>(c))) * 0x100000001b3ULL;
    }
  }
  return h;
}
