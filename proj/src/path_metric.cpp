#include "finact/path_metric.hpp"

#include <algorithm>
#include <cmath>

namespace finact {

void MaterializedGraph::add_edge(std::size_t i, std::size_t j, double weight) {
  if (i >= adjacency_.size() || j >= adjacency_.size()) throw InputError("edge endpoint out of range");
  if (!(weight >= 0.0)) throw InputError("edge weights must be nonnegative");
  if (i == j) return;
  for (const auto& [from, to] : {std::pair{i, j}, std::pair{j, i}}) {
    auto [it, inserted] = adjacency_[from].try_emplace(to, weight);
    if (!inserted) it->second = std::min(it->second, weight);
  }
}

std::vector<WeightedEdge> MaterializedGraph::edges() const {
  std::vector<WeightedEdge> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (const auto& [j, w] : adjacency_[i]) {
      if (i < j) out.push_back({i, j, w});
    }
  }
  return out;
}

DistanceMatrix all_pairs_oracle(const MaterializedGraph& graph, std::size_t cap) {
  const std::size_t n = graph.vertex_count();
  if (n > cap) {
    throw BudgetExceeded("all-pairs oracle on " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
  }
  DistanceMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) dist(i, i) = 0.0;
  for (const auto& e : graph.edges()) {
    dist(e.i, e.j) = std::min(dist(e.i, e.j), e.weight);
    dist(e.j, e.i) = std::min(dist(e.j, e.i), e.weight);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist(i, k);
      if (dik == kUnreachable) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double through = dik + dist(k, j);
        if (through < dist(i, j)) dist(i, j) = through;
      }
    }
  }
  return dist;
}

double diameter(const DistanceMatrix& dist, std::span<const std::size_t> component) {
  double best = 0.0;
  const auto consider = [&](std::size_t i, std::size_t j) {
    const double d = dist(i, j);
    if (std::isfinite(d)) best = std::max(best, d);
  };
  if (component.empty()) {
    for (std::size_t i = 0; i < dist.size(); ++i) {
      for (std::size_t j = 0; j < dist.size(); ++j) consider(i, j);
    }
  } else {
    for (const auto i : component) {
      for (const auto j : component) consider(i, j);
    }
  }
  return best;
}

}  // namespace finact
