#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "finact/action.hpp"
#include "finact/caps.hpp"
#include "finact/group.hpp"
#include "finact/path_metric.hpp"
#include "finact/quotient.hpp"
#include "json.hpp"

namespace finact {

/// d_ε = κ + ε·d_st on the window, with m = max d_ε and k = max(2, ⌈2m/ε⌉).
struct EpsilonMetric {
  SampledAction base;
  double epsilon = 0.0;
  std::vector<double> values;
  double m = 0.0;
  int k = 2;

  std::size_t size() const { return base.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

/// Smallest integer k >= 2 with k >= 2m/ε. A quotient within 1e-9 of an integer
/// snaps to it, so ε = 1/3 does not overshoot through rounding.
int choose_k(double m, double epsilon);

EpsilonMetric build_epsilon_metric(SampledAction sa, double epsilon);

enum class ModelMode { kMaterialized, kLazy };

struct BuildOptions {
  ModelMode mode = ModelMode::kMaterialized;
  Caps caps;
};

struct ModelParams {
  double epsilon = 0.0;
  double m = 0.0;
  int k = 2;
  double D = 0.0;  // cross-coset constant; NaN in lazy mode
  nlohmann::json quotient;
};

using LazySearch = SearchResult<LazyVertex, ArcLabel>;

/// Finite isometric model (Y, η, ψ, f) of a sampled action.
///
/// Vertices of a materialized model are (p, x) with p in H' = π(<A ∪ generators>)
/// listed breadth-first from the identity; vertex id = index(p) * |X0| + index(x).
/// Distances inside a left coset of H0 = <π(A)> copy the path metric of H0 x X0;
/// distances across cosets are the constant D.
class FiniteModel {
 public:
  ModelMode mode() const { return mode_; }
  const Group& group() const { return group_; }
  const EpsilonMetric& metric() const { return metric_; }
  const FiniteQuotient& quotient() const { return quotient_; }
  const ImplicitGraph& graph() const { return *graph_; }
  const ModelParams& params() const { return params_; }
  const Caps& caps() const { return caps_; }
  /// π(a) for each window element, in window order.
  std::span<const FiniteElement> window_images() const { return window_images_; }

  std::size_t point_count() const { return metric_.base.x0.size(); }

  // Materialized carrier. These throw InputError in lazy mode.
  std::size_t vertex_count() const;
  std::span<const FiniteElement> carrier_elements() const;
  std::size_t subgroup_order() const { return subgroup_order_; }
  std::size_t coset_count() const;
  const DistanceMatrix& distances() const;
  const std::map<std::string, std::vector<std::size_t>>& psi() const;
  std::vector<std::size_t> f() const;
  std::size_t vertex_id(const LazyVertex& v) const;
  LazyVertex vertex(std::size_t id) const;
  double distance(std::size_t u, std::size_t v) const { return distances()(u, v); }

  /// f(x) = (e, x).
  LazyVertex embed(std::size_t x) const { return {quotient_.identity(), static_cast<std::uint32_t>(x)}; }
  /// ψ_g(q, x) = (π(g) q, x).
  LazyVertex act(const GroupElement& g, const LazyVertex& v) const;
  std::size_t act(const GroupElement& g, std::size_t vertex_id) const;

  /// Bounded search from (e, x) over the implicit graph, radius m.
  LazySearch eta_profile(std::size_t x) const;

  friend FiniteModel build_model(const Group& group, SampledAction window, double epsilon,
                                 const BuildOptions& options);

 private:
  ModelMode mode_ = ModelMode::kMaterialized;
  Group group_;
  EpsilonMetric metric_;
  FiniteQuotient quotient_;
  std::shared_ptr<const ImplicitGraph> graph_;
  ModelParams params_;
  Caps caps_;
  std::vector<FiniteElement> window_images_;

  std::vector<FiniteElement> carrier_;
  std::unordered_map<FiniteElement, std::size_t> carrier_index_;
  std::size_t subgroup_order_ = 0;
  std::vector<std::size_t> coset_of_;
  DistanceMatrix distances_;
  std::map<std::string, std::vector<std::size_t>> psi_;
};

/// Builds the implicit model graph: from (v, x), for g, h in A and y in X0, an arc
/// to (v π(g)⁻¹π(h), y) weighted d_ε((g,x),(h,y)); parallel arcs keep the minimum.
ImplicitGraph build_model_graph(const EpsilonMetric& metric, std::span<const FiniteElement> window_images);

/// `window` must have a symmetric A containing e (sample_action after symmetrize,
/// or table_action).
FiniteModel build_model(const Group& group, SampledAction window, double epsilon, const BuildOptions& options);

/// Symmetrizes A, samples the action and builds the model.
FiniteModel build_model(const Action& action, const GenSet& a, std::span<const Point> x0, double epsilon,
                        const BuildOptions& options);

/// η(ψ_g f(x), ψ_h f(y)) for window indices g, h of A and x, y of X0.
double eta(const FiniteModel& model, std::size_t g, std::size_t h, std::size_t x, std::size_t y);

struct PairRecord {
  std::size_t g = 0, h = 0, x = 0, y = 0;
  double d = 0.0;
  double d_eps = 0.0;
  double eta = 0.0;
  double residual = 0.0;        // η - d_ε
  double bound_residual = 0.0;  // |η - d| - ε
};

struct VerificationReport {
  std::vector<PairRecord> records;
  double epsilon = 0.0;
  double tol = 0.0;
  double max_abs_residual = 0.0;   // max |η - d_ε|
  double max_deviation = 0.0;      // max |η - d|
  double max_bound_residual = 0.0; // max (|η - d| - ε)
  std::size_t explored_vertices = 0;
  bool pass = false;
};

/// Sweeps the whole window: η = d_ε within tol and |η - d| <= ε + tol.
VerificationReport verify_model(const FiniteModel& model, const SampledAction& sa, double epsilon, double tol = 1e-9);

}  // namespace finact
