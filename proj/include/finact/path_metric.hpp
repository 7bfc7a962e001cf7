#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "finact/error.hpp"
#include "finact/quotient.hpp"

namespace finact {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct WeightedEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
  bool operator==(const WeightedEdge&) const = default;
};

/// Undirected weighted graph on {0..n-1}. Parallel edges keep the minimum weight;
/// self-loops are dropped.
class MaterializedGraph {
 public:
  using Vertex = std::size_t;
  using Label = std::monostate;

  explicit MaterializedGraph(std::size_t vertex_count) : adjacency_(vertex_count) {}

  void add_edge(std::size_t i, std::size_t j, double weight);

  std::size_t vertex_count() const { return adjacency_.size(); }
  /// Each undirected edge once, with i < j, sorted.
  std::vector<WeightedEdge> edges() const;

  template <typename F>
  void for_each_arc(Vertex v, F&& visit) const {
    for (const auto& [to, w] : adjacency_[v]) visit(to, w, Label{});
  }

 private:
  std::vector<std::map<std::size_t, double>> adjacency_;
};

/// Dense row-major distance matrix; kUnreachable marks disconnected pairs.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = kUnreachable) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t i) const { return std::span(data_).subspan(i * n_, n_); }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Floyd–Warshall. Throws BudgetExceeded above `cap` vertices.
DistanceMatrix all_pairs_oracle(const MaterializedGraph& graph, std::size_t cap = 2000);

/// Largest finite distance among `component` (all vertices when empty).
double diameter(const DistanceMatrix& dist, std::span<const std::size_t> component = {});

template <typename Vertex, typename Label>
struct SearchResult {
  struct Entry {
    Vertex vertex;
    double distance = 0.0;
    std::optional<std::size_t> parent;  // index into settled
    Label label{};                      // label of the arc from the parent
  };

  /// Vertices in settle order (nondecreasing distance).
  std::vector<Entry> settled;
  std::unordered_map<Vertex, std::size_t> index;

  const Entry* find(const Vertex& v) const {
    const auto it = index.find(v);
    return it == index.end() ? nullptr : &settled[it->second];
  }
  std::optional<double> distance(const Vertex& v) const {
    const Entry* e = find(v);
    return e ? std::optional<double>(e->distance) : std::nullopt;
  }
  /// Entries from the source to `v`, inclusive. Empty when `v` was not reached.
  std::vector<const Entry*> path_to(const Vertex& v) const {
    std::vector<const Entry*> path;
    for (const Entry* e = find(v); e != nullptr; e = e->parent ? &settled[*e->parent] : nullptr) {
      path.push_back(e);
    }
    return {path.rbegin(), path.rend()};
  }
};

/// Single-source Dijkstra restricted to distance <= bound. Vertices farther than
/// `bound` are never queued. Queue ties break on the vertex order, so the settle
/// order is deterministic. Throws BudgetExceeded past `max_vertices` settled vertices.
template <typename Graph>
SearchResult<typename Graph::Vertex, typename Graph::Label> bounded_dijkstra(
    const Graph& graph, const typename Graph::Vertex& source, double bound, std::size_t max_vertices) {
  using Vertex = typename Graph::Vertex;
  using Label = typename Graph::Label;
  using Result = SearchResult<Vertex, Label>;
  if (!(bound >= 0.0)) throw InputError("bounded_dijkstra requires bound >= 0");

  struct Item {
    double distance;
    Vertex vertex;
    std::optional<std::size_t> parent;
    Label label;
  };
  const auto later = [](const Item& a, const Item& b) {
    if (a.distance != b.distance) return a.distance > b.distance;
    return b.vertex < a.vertex;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  std::unordered_map<Vertex, double> tentative;

  Result result;
  queue.push(Item{0.0, source, std::nullopt, Label{}});
  tentative.emplace(source, 0.0);
  while (!queue.empty()) {
    Item item = queue.top();
    queue.pop();
    if (result.index.contains(item.vertex)) continue;
    const std::size_t here = result.settled.size();
    if (here >= max_vertices) {
      throw BudgetExceeded("bounded search settled more than " + std::to_string(max_vertices) + " vertices");
    }
    result.index.emplace(item.vertex, here);
    result.settled.push_back({item.vertex, item.distance, item.parent, item.label});
    const double base = item.distance;
    graph.for_each_arc(result.settled.back().vertex, [&](Vertex to, double weight, const Label& label) {
      const double candidate = base + weight;
      if (candidate > bound || result.index.contains(to)) return;
      const auto it = tentative.find(to);
      if (it != tentative.end() && it->second <= candidate) return;
      tentative.insert_or_assign(to, candidate);
      queue.push(Item{candidate, std::move(to), here, label});
    });
  }
  return result;
}

/// Vertex of the model graph: a quotient element paired with a window point index.
struct LazyVertex {
  FiniteElement q;
  std::uint32_t x = 0;

  auto operator<=>(const LazyVertex&) const = default;
  bool operator==(const LazyVertex&) const = default;
};

/// Window indices (g, h) of the pair realizing an edge.
struct ArcLabel {
  std::uint32_t g = 0;
  std::uint32_t h = 0;
  bool operator==(const ArcLabel&) const = default;
};

/// Arc template: from (v, x) to (v * steps[step], y).
struct StepArc {
  std::size_t step = 0;
  std::uint32_t y = 0;
  double weight = 0.0;
  ArcLabel label;
};

/// Graph on H x X0 given by right multiplication with a fixed step list. It is
/// invariant under left multiplication by H, so it never needs enumerating.
class ImplicitGraph {
 public:
  using Vertex = LazyVertex;
  using Label = ArcLabel;

  ImplicitGraph(std::vector<FiniteElement> steps, std::vector<std::vector<StepArc>> arcs_by_x)
      : steps_(std::move(steps)), arcs_by_x_(std::move(arcs_by_x)) {}

  std::span<const FiniteElement> steps() const { return steps_; }
  std::span<const StepArc> arcs(std::uint32_t x) const { return arcs_by_x_[x]; }
  std::size_t point_count() const { return arcs_by_x_.size(); }

  template <typename F>
  void for_each_arc(const Vertex& v, F&& visit) const {
    for (const auto& arc : arcs_by_x_[v.x]) visit(Vertex{v.q * steps_[arc.step], arc.y}, arc.weight, arc.label);
  }

 private:
  std::vector<FiniteElement> steps_;
  std::vector<std::vector<StepArc>> arcs_by_x_;
};

}  // namespace finact

template <>
struct std::hash<finact::LazyVertex> {
  std::size_t operator()(const finact::LazyVertex& v) const {
    return std::hash<finact::FiniteElement>{}(v.q) * 31 + v.x;
  }
};
