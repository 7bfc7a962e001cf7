#include "finact/model.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "finact/error.hpp"

namespace finact {

int choose_k(double m, double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  const double ratio = 2.0 * m / epsilon;
  if (!std::isfinite(ratio) || ratio > 1e9) throw BudgetExceeded("2m/epsilon is too large for a finite model");
  const double nearest = std::round(ratio);
  const double snapped = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio) ? nearest : std::ceil(ratio);
  return std::max(2, static_cast<int>(snapped));
}

EpsilonMetric build_epsilon_metric(SampledAction sa, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be a positive finite number");
  EpsilonMetric em;
  const std::size_t n = sa.size();
  em.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = sa(i, j) + (i == j ? 0.0 : epsilon);
      em.values[i * n + j] = v;
      em.m = std::max(em.m, v);
    }
  }
  em.base = std::move(sa);
  em.epsilon = epsilon;
  em.k = choose_k(em.m, epsilon);
  return em;
}

ImplicitGraph build_model_graph(const EpsilonMetric& metric, std::span<const FiniteElement> window_images) {
  const auto& a = metric.base.a;
  const std::size_t nx = metric.base.x0.size();
  if (window_images.size() != a.size()) throw InputError("window image count does not match A");

  std::vector<FiniteElement> steps;
  std::unordered_map<FiniteElement, std::size_t> step_index;
  std::vector<std::size_t> step_of(a.size() * a.size());
  std::vector<FiniteElement> inverses;
  for (const auto& img : window_images) inverses.push_back(inverse(img));
  for (std::size_t g = 0; g < a.size(); ++g) {
    for (std::size_t h = 0; h < a.size(); ++h) {
      FiniteElement s = inverses[g] * window_images[h];
      auto [it, inserted] = step_index.try_emplace(s, steps.size());
      if (inserted) steps.push_back(std::move(s));
      step_of[g * a.size() + h] = it->second;
    }
  }

  std::vector<std::vector<StepArc>> arcs_by_x(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    std::map<std::pair<std::size_t, std::uint32_t>, StepArc> best;
    for (std::size_t g = 0; g < a.size(); ++g) {
      for (std::size_t h = 0; h < a.size(); ++h) {
        const std::size_t s = step_of[g * a.size() + h];
        for (std::size_t y = 0; y < nx; ++y) {
          if (y == x && steps[s].is_identity()) continue;
          const double w = metric(metric.base.index(g, x), metric.base.index(h, y));
          const auto key = std::pair{s, static_cast<std::uint32_t>(y)};
          const StepArc arc{s, static_cast<std::uint32_t>(y), w,
                            ArcLabel{static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(h)}};
          auto [it, inserted] = best.try_emplace(key, arc);
          if (!inserted && w < it->second.weight) it->second = arc;
        }
      }
    }
    for (auto& [key, arc] : best) arcs_by_x[x].push_back(arc);
  }
  return ImplicitGraph(std::move(steps), std::move(arcs_by_x));
}

std::size_t FiniteModel::vertex_count() const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no materialized carrier");
  return carrier_.size() * point_count();
}

std::span<const FiniteElement> FiniteModel::carrier_elements() const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no materialized carrier");
  return carrier_;
}

std::size_t FiniteModel::coset_count() const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no materialized carrier");
  return carrier_.size() / std::max<std::size_t>(1, subgroup_order_);
}

const DistanceMatrix& FiniteModel::distances() const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no distance matrix");
  return distances_;
}

const std::map<std::string, std::vector<std::size_t>>& FiniteModel::psi() const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no materialized psi");
  return psi_;
}

std::vector<std::size_t> FiniteModel::f() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < point_count(); ++x) out.push_back(vertex_id(embed(x)));
  return out;
}

std::size_t FiniteModel::vertex_id(const LazyVertex& v) const {
  if (mode_ != ModelMode::kMaterialized) throw InputError("lazy models have no vertex ids");
  const auto it = carrier_index_.find(v.q);
  if (it == carrier_index_.end() || v.x >= point_count()) throw InputError("vertex is outside the carrier");
  return it->second * point_count() + v.x;
}

LazyVertex FiniteModel::vertex(std::size_t id) const {
  if (id >= vertex_count()) throw InputError("vertex id is outside the carrier");
  return {carrier_[id / point_count()], static_cast<std::uint32_t>(id % point_count())};
}

LazyVertex FiniteModel::act(const GroupElement& g, const LazyVertex& v) const {
  return {quotient_.apply(g) * v.q, v.x};
}

std::size_t FiniteModel::act(const GroupElement& g, std::size_t vertex_id) const {
  return this->vertex_id(act(g, vertex(vertex_id)));
}

LazySearch FiniteModel::eta_profile(std::size_t x) const {
  if (x >= point_count()) throw InputError("window point index out of range");
  return bounded_dijkstra(*graph_, embed(x), metric_.m, caps_.max_vertices);
}

FiniteModel build_model(const Group& group, SampledAction window, double epsilon, const BuildOptions& options) {
  if (window.a.empty() || window.x0.empty()) throw InputError("window needs nonempty A and X0");
  if (!(symmetrize(window.a) == window.a)) throw InputError("window A must be symmetric and contain the identity");
  for (const auto& g : window.a) {
    if (!group.contains(g)) throw FamilyMismatch("window element " + element_text(g) + " is not in the group");
  }

  FiniteModel model;
  model.mode_ = options.mode;
  model.group_ = group;
  model.caps_ = options.caps;
  model.metric_ = build_epsilon_metric(std::move(window), epsilon);
  const EpsilonMetric& metric = model.metric_;
  const GenSet& a = metric.base.a;
  const std::size_t nx = metric.base.x0.size();

  model.quotient_ = quotient_for(group, a, metric.k, options.caps);
  for (const auto& g : a) model.window_images_.push_back(model.quotient_.apply(g));
  model.graph_ = std::make_shared<const ImplicitGraph>(build_model_graph(metric, model.window_images_));
  model.params_ = {epsilon, metric.m, metric.k, std::numeric_limits<double>::quiet_NaN(),
                   model.quotient_.descriptor()};
  if (options.mode == ModelMode::kLazy) return model;

  // G acts through π(<A ∪ generators>), so that image is the carrier.
  std::vector<GroupElement> carrier_gens(a.begin(), a.end());
  for (const auto& s : group.generators()) {
    if (!a.contains(s)) carrier_gens.push_back(s);
  }
  const std::size_t element_cap =
      std::min({options.caps.max_quotient_order, options.caps.max_vertices / nx, options.caps.max_matrix_vertices / nx});
  const std::string advice = "; use lazy mode";
  try {
    model.carrier_ = enumerate_image(model.quotient_, carrier_gens, element_cap, options.caps.max_image_bytes);
  } catch (const BudgetExceeded& err) {
    throw BudgetExceeded(std::string("materialized carrier: ") + err.what());
  }
  for (std::size_t i = 0; i < model.carrier_.size(); ++i) model.carrier_index_.emplace(model.carrier_[i], i);

  const std::vector<FiniteElement> subgroup =
      enumerate_image(model.quotient_, std::vector<GroupElement>(a.begin(), a.end()), element_cap,
                      options.caps.max_image_bytes);
  model.subgroup_order_ = subgroup.size();
  std::unordered_map<FiniteElement, std::size_t> subgroup_index;
  for (std::size_t i = 0; i < subgroup.size(); ++i) subgroup_index.emplace(subgroup[i], i);

  // Path metric on Y0 = H0 x X0.
  const ImplicitGraph& graph = *model.graph_;
  const std::size_t n0 = subgroup.size() * nx;
  MaterializedGraph y0(n0);
  std::vector<std::vector<std::size_t>> step_target(subgroup.size());
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    for (const auto& s : graph.steps()) step_target[i].push_back(subgroup_index.at(subgroup[i] * s));
  }
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    for (std::size_t x = 0; x < nx; ++x) {
      for (const auto& arc : graph.arcs(static_cast<std::uint32_t>(x))) {
        y0.add_edge(i * nx + x, step_target[i][arc.step] * nx + arc.y, arc.weight);
      }
    }
  }
  DistanceMatrix eta0(n0);
  for (std::size_t src = 0; src < n0; ++src) {
    const auto search = bounded_dijkstra(y0, src, kUnreachable, n0 + 1);
    for (const auto& entry : search.settled) eta0(src, entry.vertex) = entry.distance;
  }
  const double D = std::max(diameter(eta0), metric.m);
  model.params_.D = D;

  // Left cosets p·H0, each keyed by its first element in carrier order.
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  model.coset_of_.assign(model.carrier_.size(), none);
  std::vector<std::size_t> local(model.carrier_.size(), none);
  std::size_t cosets = 0;
  for (std::size_t p = 0; p < model.carrier_.size(); ++p) {
    if (model.coset_of_[p] != none) continue;
    for (std::size_t i = 0; i < subgroup.size(); ++i) {
      const std::size_t member = model.carrier_index_.at(model.carrier_[p] * subgroup[i]);
      model.coset_of_[member] = cosets;
      local[member] = i;
    }
    ++cosets;
  }

  const std::size_t n = model.carrier_.size() * nx;
  if (n > options.caps.max_matrix_vertices) {
    throw BudgetExceeded("materialized metric on " + std::to_string(n) + " vertices exceeds cap " +
                         std::to_string(options.caps.max_matrix_vertices) + advice);
  }
  model.distances_ = DistanceMatrix(n, D);
  for (std::size_t p = 0; p < model.carrier_.size(); ++p) {
    for (std::size_t r = 0; r < model.carrier_.size(); ++r) {
      if (model.coset_of_[p] != model.coset_of_[r]) continue;
      for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < nx; ++y) {
          model.distances_(p * nx + x, r * nx + y) = eta0(local[p] * nx + x, local[r] * nx + y);
        }
      }
    }
  }

  for (const auto& g : carrier_gens) {
    const FiniteElement image = model.quotient_.apply(g);
    std::vector<std::size_t> perm(n);
    for (std::size_t p = 0; p < model.carrier_.size(); ++p) {
      const std::size_t target = model.carrier_index_.at(image * model.carrier_[p]);
      for (std::size_t x = 0; x < nx; ++x) perm[p * nx + x] = target * nx + x;
    }
    model.psi_.emplace(element_text(g), std::move(perm));
  }
  return model;
}

FiniteModel build_model(const Action& action, const GenSet& a, std::span<const Point> x0, double epsilon,
                        const BuildOptions& options) {
  return build_model(action.group(), sample_action(action, symmetrize(a), x0), epsilon, options);
}

double eta(const FiniteModel& model, std::size_t g, std::size_t h, std::size_t x, std::size_t y) {
  const auto images = model.window_images();
  if (g >= images.size() || h >= images.size() || x >= model.point_count() || y >= model.point_count()) {
    throw InputError("eta arguments are outside the window");
  }
  if (model.mode() == ModelMode::kMaterialized) {
    return model.distance(model.vertex_id({images[g], static_cast<std::uint32_t>(x)}),
                          model.vertex_id({images[h], static_cast<std::uint32_t>(y)}));
  }
  const auto& metric = model.metric();
  const double direct = metric(metric.base.index(g, x), metric.base.index(h, y));
  const LazyVertex target{inverse(images[g]) * images[h], static_cast<std::uint32_t>(y)};
  const auto found = model.eta_profile(x).distance(target);
  return found ? std::min(*found, direct) : direct;
}

VerificationReport verify_model(const FiniteModel& model, const SampledAction& sa, double epsilon, double tol) {
  const auto& window = model.metric().base;
  if (sa.size() != window.size() || sa.x0.size() != window.x0.size()) {
    throw InputError("verification window does not match the model window");
  }
  const std::size_t na = sa.a.size();
  const std::size_t nx = sa.x0.size();
  const auto images = model.window_images();

  VerificationReport report;
  report.epsilon = epsilon;
  report.tol = tol;

  std::vector<LazySearch> profiles;
  if (model.mode() == ModelMode::kLazy) {
    std::vector<std::future<LazySearch>> pending;
    for (std::size_t x = 0; x < nx; ++x) {
      pending.push_back(std::async(std::launch::async, [&model, x] { return model.eta_profile(x); }));
    }
    for (auto& p : pending) {
      profiles.push_back(p.get());
      report.explored_vertices += profiles.back().settled.size();
    }
  }

  std::vector<FiniteElement> inverses;
  for (const auto& img : images) inverses.push_back(inverse(img));
  const auto& metric = model.metric();
  for (std::size_t g = 0; g < na; ++g) {
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t h = 0; h < na; ++h) {
        for (std::size_t y = 0; y < nx; ++y) {
          const std::size_t i = sa.index(g, x);
          const std::size_t j = sa.index(h, y);
          PairRecord r{g, h, x, y};
          r.d = sa(i, j);
          r.d_eps = r.d + (i == j ? 0.0 : epsilon);
          if (model.mode() == ModelMode::kMaterialized) {
            r.eta = eta(model, g, h, x, y);
          } else {
            const double direct = metric(i, j);
            const auto found = profiles[x].distance({inverses[g] * images[h], static_cast<std::uint32_t>(y)});
            r.eta = found ? std::min(*found, direct) : direct;
          }
          r.residual = r.eta - r.d_eps;
          r.bound_residual = std::abs(r.eta - r.d) - epsilon;
          report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r.residual));
          report.max_deviation = std::max(report.max_deviation, std::abs(r.eta - r.d));
          report.max_bound_residual =
              report.records.empty() ? r.bound_residual : std::max(report.max_bound_residual, r.bound_residual);
          report.records.push_back(r);
        }
      }
    }
  }
  report.pass = report.max_abs_residual <= tol && report.max_bound_residual <= tol;
  return report;
}

}  // namespace finact
