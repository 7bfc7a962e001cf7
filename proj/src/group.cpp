#include "finact/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "finact/error.hpp"

namespace finact {
namespace {

template <typename T>
void append_bytes(std::string& out, const T& value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InputError("lattice coordinate overflow");
  return out;
}

std::int64_t checked_neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw InputError("lattice coordinate overflow");
  return -a;
}

void require_same_family(const GroupElement& a, const GroupElement& b) {
  if (a.family() != b.family()) {
    throw FamilyMismatch("cannot combine " + std::string(family_name(a.family())) + " and " +
                         std::string(family_name(b.family())) + " elements");
  }
}

// Rank of a free letter in the order g1 < g1^-1 < g2 < g2^-1 < ...
int letter_key(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

// Rank of a lattice coordinate in the order 0 < 1 < -1 < 2 < -2 < ...
std::uint64_t coord_key(std::int64_t c) {
  const std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
  return c > 0 ? 2 * mag - 1 : 2 * mag;
}

std::uint64_t l1_length(const LatticeVector& v) {
  std::uint64_t total = 0;
  for (const auto c : v.coords) {
    total += c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
  }
  return total;
}

std::int64_t require_int(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kFree: return "free";
    case Family::kLattice: return "lattice";
    case Family::kCyclic: return "cyclic";
    case Family::kPerm: return "perm";
    case Family::kProduct: return "product";
  }
  return "unknown";
}

bool ProductPair::operator==(const ProductPair& other) const { return parts == other.parts; }

GroupElement GroupElement::free_word(std::vector<int> letters) {
  std::vector<int> reduced;
  reduced.reserve(letters.size());
  for (const int letter : letters) {
    if (letter == 0) throw InputError("free word letters must be nonzero");
    if (!reduced.empty() && reduced.back() == -letter) {
      reduced.pop_back();
    } else {
      reduced.push_back(letter);
    }
  }
  return GroupElement(FreeWord{std::move(reduced)});
}

GroupElement GroupElement::lattice(std::vector<std::int64_t> coords) {
  return GroupElement(LatticeVector{std::move(coords)});
}

GroupElement GroupElement::cyclic(std::int64_t value, std::int64_t order) {
  if (order < 1) throw InputError("cyclic order must be positive");
  std::int64_t r = value % order;
  if (r < 0) r += order;
  return GroupElement(CyclicResidue{r, order});
}

GroupElement GroupElement::perm(Permutation p) { return GroupElement(std::move(p)); }

GroupElement GroupElement::product(GroupElement first, GroupElement second) {
  ProductPair pair;
  pair.parts.reserve(2);
  pair.parts.push_back(std::move(first));
  pair.parts.push_back(std::move(second));
  return GroupElement(std::move(pair));
}

bool GroupElement::is_identity() const {
  switch (family()) {
    case Family::kFree: return word().letters.empty();
    case Family::kLattice:
      return std::all_of(vec().coords.begin(), vec().coords.end(), [](auto c) { return c == 0; });
    case Family::kCyclic: return residue().value == 0;
    case Family::kPerm: return permutation().is_identity();
    case Family::kProduct: return first().is_identity() && second().is_identity();
  }
  return false;
}

std::string GroupElement::encode() const {
  std::string out;
  out.push_back(static_cast<char>(family()));
  switch (family()) {
    case Family::kFree:
      for (const int l : word().letters) append_bytes(out, static_cast<std::int32_t>(l));
      break;
    case Family::kLattice:
      for (const auto c : vec().coords) append_bytes(out, c);
      break;
    case Family::kCyclic:
      append_bytes(out, residue().order);
      append_bytes(out, residue().value);
      break;
    case Family::kPerm:
      for (const auto v : permutation().images()) append_bytes(out, v);
      break;
    case Family::kProduct: {
      const std::string a = first().encode();
      append_bytes(out, static_cast<std::uint64_t>(a.size()));
      out += a;
      out += second().encode();
      break;
    }
  }
  return out;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same_family(a, b);
  switch (a.family()) {
    case Family::kFree: {
      std::vector<int> letters = a.word().letters;
      const auto& rhs = b.word().letters;
      std::size_t i = 0;
      while (i < rhs.size() && !letters.empty() && letters.back() == -rhs[i]) {
        letters.pop_back();
        ++i;
      }
      letters.insert(letters.end(), rhs.begin() + static_cast<std::ptrdiff_t>(i), rhs.end());
      return GroupElement::free_word(std::move(letters));
    }
    case Family::kLattice: {
      const auto& x = a.vec().coords;
      const auto& y = b.vec().coords;
      if (x.size() != y.size()) throw FamilyMismatch("lattice dimension mismatch");
      std::vector<std::int64_t> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = checked_add(x[i], y[i]);
      return GroupElement::lattice(std::move(out));
    }
    case Family::kCyclic: {
      const auto& x = a.residue();
      const auto& y = b.residue();
      if (x.order != y.order) throw FamilyMismatch("cyclic order mismatch");
      // Residues lie in [0, order), so the sum cannot overflow for order <= 2^62.
      return GroupElement::cyclic((x.value + y.value) % x.order, x.order);
    }
    case Family::kPerm:
      if (a.permutation().degree() != b.permutation().degree()) {
        throw FamilyMismatch("permutation degree mismatch");
      }
      return GroupElement::perm(a.permutation() * b.permutation());
    case Family::kProduct:
      return GroupElement::product(multiply(a.first(), b.first()), multiply(a.second(), b.second()));
  }
  throw FamilyMismatch("unsupported family");
}

GroupElement inverse(const GroupElement& a) {
  switch (a.family()) {
    case Family::kFree: {
      std::vector<int> letters(a.word().letters.rbegin(), a.word().letters.rend());
      for (int& l : letters) l = -l;
      return GroupElement::free_word(std::move(letters));
    }
    case Family::kLattice: {
      std::vector<std::int64_t> out = a.vec().coords;
      for (auto& c : out) c = checked_neg(c);
      return GroupElement::lattice(std::move(out));
    }
    case Family::kCyclic:
      return GroupElement::cyclic(a.residue().order - a.residue().value, a.residue().order);
    case Family::kPerm: return GroupElement::perm(a.permutation().inverse());
    case Family::kProduct: return GroupElement::product(inverse(a.first()), inverse(a.second()));
  }
  return a;
}

GroupElement identity_like(const GroupElement& a) {
  switch (a.family()) {
    case Family::kFree: return GroupElement::free_word({});
    case Family::kLattice:
      return GroupElement::lattice(std::vector<std::int64_t>(a.vec().coords.size(), 0));
    case Family::kCyclic: return GroupElement::cyclic(0, a.residue().order);
    case Family::kPerm: return GroupElement::perm(Permutation::identity(a.permutation().degree()));
    case Family::kProduct:
      return GroupElement::product(identity_like(a.first()), identity_like(a.second()));
  }
  return a;
}

GroupElement power(const GroupElement& a, std::uint64_t n) {
  GroupElement result = identity_like(a);
  GroupElement base = a;
  while (n > 0) {
    if (n & 1U) result = multiply(result, base);
    n >>= 1U;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

std::strong_ordering shortlex_compare(const GroupElement& a, const GroupElement& b) {
  if (a.family() != b.family()) return a.family() <=> b.family();
  switch (a.family()) {
    case Family::kFree: {
      const auto& x = a.word().letters;
      const auto& y = b.word().letters;
      if (x.size() != y.size()) return x.size() <=> y.size();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != y[i]) return letter_key(x[i]) <=> letter_key(y[i]);
      }
      return std::strong_ordering::equal;
    }
    case Family::kLattice: {
      const auto& x = a.vec();
      const auto& y = b.vec();
      if (x.coords.size() != y.coords.size()) return x.coords.size() <=> y.coords.size();
      const auto lx = l1_length(x);
      const auto ly = l1_length(y);
      if (lx != ly) return lx <=> ly;
      for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] != y.coords[i]) return coord_key(x.coords[i]) <=> coord_key(y.coords[i]);
      }
      return std::strong_ordering::equal;
    }
    case Family::kCyclic:
      if (a.residue().order != b.residue().order) return a.residue().order <=> b.residue().order;
      return a.residue().value <=> b.residue().value;
    case Family::kPerm: return a.permutation() <=> b.permutation();
    case Family::kProduct: {
      const auto c = shortlex_compare(a.first(), b.first());
      if (c != 0) return c;
      return shortlex_compare(a.second(), b.second());
    }
  }
  return std::strong_ordering::equal;
}

nlohmann::json element_to_json(const GroupElement& g) {
  switch (g.family()) {
    case Family::kFree: return g.word().letters;
    case Family::kLattice: return g.vec().coords;
    case Family::kCyclic: return g.residue().value;
    case Family::kPerm: {
      const auto images = g.permutation().images();
      return std::vector<std::uint32_t>(images.begin(), images.end());
    }
    case Family::kProduct:
      return nlohmann::json::array({element_to_json(g.first()), element_to_json(g.second())});
  }
  return nullptr;
}

std::string element_text(const GroupElement& g) { return element_to_json(g).dump(); }

GenSet::GenSet(std::vector<GroupElement> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), ShortlexLess{});
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool GenSet::contains(const GroupElement& g) const { return index_of(g) != size(); }

std::size_t GenSet::index_of(const GroupElement& g) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(), g, ShortlexLess{});
  if (it != elements_.end() && *it == g) return static_cast<std::size_t>(it - elements_.begin());
  return size();
}

GenSet symmetrize(const GenSet& a) {
  if (a.empty()) throw InputError("cannot symmetrize an empty set");
  std::vector<GroupElement> out;
  out.reserve(2 * a.size() + 1);
  out.push_back(identity_like(a[0]));
  for (const auto& g : a) {
    out.push_back(g);
    out.push_back(inverse(g));
  }
  return GenSet(std::move(out));
}

GenSet product_set(const GenSet& a, int k, std::size_t cap) {
  if (k < 1) throw InputError("product_set requires k >= 1");
  if (a.empty()) return a;
  if (a.size() > cap) throw BudgetExceeded("product set exceeds cap " + std::to_string(cap));
  const bool has_identity = a.contains(identity_like(a[0]));

  std::unordered_set<GroupElement> seen(a.begin(), a.end());
  std::vector<GroupElement> layer(a.begin(), a.end());
  for (int step = 2; step <= k; ++step) {
    if (has_identity) {
      // With e in A the powers are nested balls, so only the newest layer can grow.
      std::vector<GroupElement> next;
      for (const auto& u : layer) {
        for (const auto& s : a) {
          GroupElement p = multiply(u, s);
          if (seen.insert(p).second) {
            if (seen.size() > cap) {
              throw BudgetExceeded("product set A^" + std::to_string(k) + " exceeds cap " +
                                   std::to_string(cap));
            }
            next.push_back(std::move(p));
          }
        }
      }
      if (next.empty()) break;
      layer = std::move(next);
    } else {
      std::unordered_set<GroupElement> next;
      for (const auto& u : layer) {
        for (const auto& s : a) {
          next.insert(multiply(u, s));
          if (next.size() > cap) {
            throw BudgetExceeded("product set A^" + std::to_string(k) + " exceeds cap " +
                                 std::to_string(cap));
          }
        }
      }
      layer.assign(next.begin(), next.end());
      seen = std::move(next);
    }
  }
  return GenSet(std::vector<GroupElement>(seen.begin(), seen.end()));
}

Group Group::free(int rank) {
  if (rank < 1) throw InputError("free group rank must be >= 1");
  Group g;
  g.family_ = Family::kFree;
  g.size_ = rank;
  return g;
}

Group Group::lattice(int dim) {
  if (dim < 1) throw InputError("lattice dimension must be >= 1");
  Group g;
  g.family_ = Family::kLattice;
  g.size_ = dim;
  return g;
}

Group Group::cyclic(std::int64_t order) {
  if (order < 1 || order > (std::int64_t{1} << 62)) throw InputError("cyclic order must be in [1, 2^62]");
  Group g;
  g.family_ = Family::kCyclic;
  g.size_ = 1;
  g.order_ = order;
  return g;
}

Group Group::perm(int degree, std::vector<Permutation> generators) {
  if (degree < 1) throw InputError("permutation degree must be >= 1");
  for (const auto& p : generators) {
    if (p.degree() != static_cast<std::size_t>(degree)) {
      throw InputError("permutation generator has the wrong degree");
    }
  }
  if (generators.empty() && degree > 1) {
    std::vector<std::uint32_t> swap(static_cast<std::size_t>(degree));
    std::vector<std::uint32_t> cycle(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      swap[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
      cycle[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % degree);
    }
    std::swap(swap[0], swap[1]);
    generators.emplace_back(std::move(swap));
    if (degree > 2) generators.emplace_back(std::move(cycle));
  }
  Group g;
  g.family_ = Family::kPerm;
  g.size_ = degree;
  g.perm_generators_ = std::move(generators);
  return g;
}

Group Group::product(Group first, Group second) {
  Group g;
  g.family_ = Family::kProduct;
  g.factors_ = {std::move(first), std::move(second)};
  return g;
}

GroupElement Group::identity() const {
  switch (family_) {
    case Family::kFree: return GroupElement::free_word({});
    case Family::kLattice: return GroupElement::lattice(std::vector<std::int64_t>(static_cast<std::size_t>(size_), 0));
    case Family::kCyclic: return GroupElement::cyclic(0, order_);
    case Family::kPerm: return GroupElement::perm(Permutation::identity(static_cast<std::size_t>(size_)));
    case Family::kProduct: return GroupElement::product(factors_[0].identity(), factors_[1].identity());
  }
  return {};
}

std::vector<GroupElement> Group::generators() const {
  std::vector<GroupElement> out;
  switch (family_) {
    case Family::kFree:
      for (int i = 1; i <= size_; ++i) out.push_back(GroupElement::free_word({i}));
      break;
    case Family::kLattice:
      for (int i = 0; i < size_; ++i) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(size_), 0);
        e[static_cast<std::size_t>(i)] = 1;
        out.push_back(GroupElement::lattice(std::move(e)));
      }
      break;
    case Family::kCyclic:
      if (order_ > 1) out.push_back(GroupElement::cyclic(1, order_));
      break;
    case Family::kPerm:
      for (const auto& p : perm_generators_) out.push_back(GroupElement::perm(p));
      break;
    case Family::kProduct:
      for (const auto& g : factors_[0].generators()) {
        out.push_back(GroupElement::product(g, factors_[1].identity()));
      }
      for (const auto& g : factors_[1].generators()) {
        out.push_back(GroupElement::product(factors_[0].identity(), g));
      }
      break;
  }
  return out;
}

bool Group::contains(const GroupElement& g) const {
  if (g.family() != family_) return false;
  switch (family_) {
    case Family::kFree:
      return std::all_of(g.word().letters.begin(), g.word().letters.end(),
                         [&](int l) { return std::abs(l) <= size_; });
    case Family::kLattice: return g.vec().coords.size() == static_cast<std::size_t>(size_);
    case Family::kCyclic: return g.residue().order == order_;
    case Family::kPerm: return g.permutation().degree() == static_cast<std::size_t>(size_);
    case Family::kProduct: return factors_[0].contains(g.first()) && factors_[1].contains(g.second());
  }
  return false;
}

std::int64_t Group::word_length(const GroupElement& g) const {
  if (!contains(g)) throw FamilyMismatch("element is not in this group");
  switch (family_) {
    case Family::kFree: return static_cast<std::int64_t>(g.word().letters.size());
    case Family::kLattice: {
      std::int64_t total = 0;
      for (const auto c : g.vec().coords) total = checked_add(total, c < 0 ? checked_neg(c) : c);
      return total;
    }
    case Family::kCyclic: return std::min(g.residue().value, order_ - g.residue().value);
    case Family::kPerm: {
      // Breadth-first search on the Cayley graph.
      constexpr std::size_t kCap = 1'000'000;
      const GroupElement e = identity();
      if (g == e) return 0;
      std::vector<GroupElement> steps;
      for (const auto& s : generators()) {
        steps.push_back(s);
        steps.push_back(inverse(s));
      }
      std::unordered_map<GroupElement, std::int64_t> dist{{e, 0}};
      std::deque<GroupElement> queue{e};
      while (!queue.empty()) {
        const GroupElement u = queue.front();
        queue.pop_front();
        const std::int64_t du = dist.at(u);
        for (const auto& s : steps) {
          GroupElement v = multiply(u, s);
          if (dist.contains(v)) continue;
          if (v == g) return du + 1;
          dist.emplace(v, du + 1);
          if (dist.size() > kCap) throw BudgetExceeded("Cayley graph search exceeds cap");
          queue.push_back(std::move(v));
        }
      }
      throw InputError("permutation is not in the generated subgroup");
    }
    case Family::kProduct:
      return checked_add(factors_[0].word_length(g.first()), factors_[1].word_length(g.second()));
  }
  return 0;
}

GroupElement Group::parse_element(const nlohmann::json& j, const std::string& path) const {
  switch (family_) {
    case Family::kFree: {
      if (!j.is_array()) throw InputError(path + ": free word must be a list of signed generator indices");
      std::vector<int> letters;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const std::int64_t l = require_int(j[i], p);
        if (l == 0 || l > size_ || l < -size_) {
          throw InputError(p + ": generator index out of range for rank " + std::to_string(size_));
        }
        letters.push_back(static_cast<int>(l));
      }
      return GroupElement::free_word(std::move(letters));
    }
    case Family::kLattice: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(size_)) {
        throw InputError(path + ": lattice element must be a list of " + std::to_string(size_) + " integers");
      }
      std::vector<std::int64_t> coords;
      for (std::size_t i = 0; i < j.size(); ++i) {
        coords.push_back(require_int(j[i], path + "[" + std::to_string(i) + "]"));
      }
      return GroupElement::lattice(std::move(coords));
    }
    case Family::kCyclic: return GroupElement::cyclic(require_int(j, path), order_);
    case Family::kPerm: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(size_)) {
        throw InputError(path + ": permutation must be an image array of length " + std::to_string(size_));
      }
      std::vector<std::uint32_t> images;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const std::int64_t v = require_int(j[i], path + "[" + std::to_string(i) + "]");
        if (v < 0 || v >= size_) throw InputError(path + ": permutation entry out of range");
        images.push_back(static_cast<std::uint32_t>(v));
      }
      try {
        return GroupElement::perm(Permutation(std::move(images)));
      } catch (const InputError& err) {
        throw InputError(path + ": " + err.what());
      }
    }
    case Family::kProduct:
      if (!j.is_array() || j.size() != 2) throw InputError(path + ": product element must be a two-element list");
      return GroupElement::product(factors_[0].parse_element(j[0], path + "[0]"),
                                   factors_[1].parse_element(j[1], path + "[1]"));
  }
  throw InputError(path + ": unsupported family");
}

nlohmann::json Group::descriptor() const {
  nlohmann::json j;
  j["family"] = std::string(family_name(family_));
  switch (family_) {
    case Family::kFree: j["rank"] = size_; break;
    case Family::kLattice: j["dim"] = size_; break;
    case Family::kCyclic: j["order"] = order_; break;
    case Family::kPerm: {
      j["degree"] = size_;
      nlohmann::json gens = nlohmann::json::array();
      for (const auto& p : perm_generators_) {
        gens.push_back(std::vector<std::uint32_t>(p.images().begin(), p.images().end()));
      }
      j["generators"] = gens;
      break;
    }
    case Family::kProduct:
      j["factors"] = nlohmann::json::array({factors_[0].descriptor(), factors_[1].descriptor()});
      break;
  }
  return j;
}

Group Group::from_descriptor(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": group descriptor must be an object");
  if (!j.contains("family") || !j["family"].is_string()) throw InputError(path + ".family: missing or not a string");
  const std::string family = j["family"].get<std::string>();
  const auto field = [&](const char* name) -> std::int64_t {
    if (!j.contains(name)) throw InputError(path + "." + name + ": missing");
    return require_int(j[name], path + "." + name);
  };
  if (family == "free") return free(static_cast<int>(field("rank")));
  if (family == "lattice") return lattice(static_cast<int>(field("dim")));
  if (family == "cyclic") return cyclic(field("order"));
  if (family == "perm") {
    const int degree = static_cast<int>(field("degree"));
    std::vector<Permutation> gens;
    if (j.contains("generators")) {
      const Group sym = perm(degree, {});
      const auto& list = j["generators"];
      if (!list.is_array()) throw InputError(path + ".generators: expected a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        gens.push_back(sym.parse_element(list[i], path + ".generators[" + std::to_string(i) + "]").permutation());
      }
    }
    return perm(degree, std::move(gens));
  }
  if (family == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2) {
      throw InputError(path + ".factors: expected a two-element list");
    }
    return product(from_descriptor(j["factors"][0], path + ".factors[0]"),
                   from_descriptor(j["factors"][1], path + ".factors[1]"));
  }
  throw InputError(path + ".family: unsupported family '" + family + "'");
}

}  // namespace finact
