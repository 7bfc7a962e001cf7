// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "finact/error.hpp"
#include "finact/hamming.hpp"
#include "finact/model.hpp"
#include "finact/norm.hpp"
#include "finact/sequence.hpp"
#include "support.hpp"

using namespace finact;
using finact::testing::Instance;
using finact::testing::w;
using finact::testing::z;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Instance integer_instance() { return {"Z-translation", Group::lattice(1), finact::testing::integer_window(), 1.0}; }

/// Lattice and finite-cyclic instances with target order <= 500.
const std::vector<Instance>& random_instances() {
  static const std::vector<Instance> instances = [] {
    std::vector<Instance> out;
    std::mt19937_64 rng(20240607);
    for (int t = 0; out.size() < 24 && t < 10000; ++t) {
      Instance inst = finact::testing::random_instance(rng, t);
      const auto q = quotient_for(inst.group, inst.window.a, build_epsilon_metric(inst.window, inst.epsilon).k, Caps{});
      const std::size_t order = finact::testing::target_order(q);
      if (order == 0 || order > 500 || order * inst.window.x0.size() > 900) continue;
      out.push_back(std::move(inst));
    }
    return out;
  }();
  return instances;
}

std::vector<Instance> instances_1_2() {
  std::vector<Instance> all{integer_instance()};
  for (const auto& i : random_instances()) all.push_back(i);
  return all;
}

// (1)
void exact_equality(Outcome& o) {
  const auto inst = integer_instance();
  const FiniteModel model = build_model(inst.group, inst.window, 1.0, {});
  const auto report = verify_model(model, inst.window, 1.0);
  o.require(model.params().m == 3.0, "m = 3");
  o.require(model.params().k == 6, "k = 6");
  o.require(model.quotient().modulus() == 13, "modulus 13");
  o.require(report.records.size() == 9, "9 window pairs");
  o.require(report.max_abs_residual <= 1e-9, "max |eta - d_eps| = 0");
  o.require(std::abs(report.max_deviation - 1.0) <= 1e-9, "max |eta - d| = 1");
  o.detail << "m=" << model.params().m << " k=" << model.params().k << " N=" << model.quotient().modulus()
           << " max|eta-d_eps|=" << report.max_abs_residual << " max|eta-d|=" << report.max_deviation;
}

// (2)
void lazy_agreement(Outcome& o) {
  const auto& instances = random_instances();
  o.require(instances.size() >= 20, "at least 20 instances");
  double worst = 0.0;
  std::size_t lattice = 0;
  std::size_t cyclic = 0;
  for (const auto& inst : instances) {
    (inst.group.family() == Family::kCyclic ? cyclic : lattice) += 1;
    o.require(inst.window.a.size() <= 7 && inst.window.x0.size() <= 3, inst.name + " window size");
    const FiniteModel lazy = build_model(inst.group, inst.window, inst.epsilon, {ModelMode::kLazy, {}});
    o.require(finact::testing::target_order(lazy.quotient()) <= 500, inst.name + " quotient order");
    const auto oracle = finact::testing::full_oracle(inst.group, lazy.quotient(), inst.window, inst.epsilon);
    const auto images = lazy.window_images();
    const std::size_t na = inst.window.a.size();
    const std::size_t nx = inst.window.x0.size();
    for (std::size_t g = 0; g < na; ++g) {
      for (std::size_t h = 0; h < na; ++h) {
        for (std::size_t x = 0; x < nx; ++x) {
          for (std::size_t y = 0; y < nx; ++y) {
            const double expect = oracle.dist(oracle.id(images[g], x), oracle.id(images[h], y));
            const double got = eta(lazy, g, h, x, y);
            worst = std::max(worst, std::abs(got - expect));
          }
        }
      }
    }
  }
  o.require(lattice > 0 && cyclic > 0, "both families present");
  o.require(worst <= 1e-12, "lazy eta matches Floyd-Warshall");
  o.detail << instances.size() << " instances (" << lattice << " lattice, " << cyclic
           << " cyclic), max |lazy - oracle| = " << worst;
}

// (3)
void free_group_lazy(Outcome& o) {
  const Group f2 = Group::free(2);
  const auto action = make_builtin_action(f2, {ActionSpec::Kind::kLeftDiscrete, std::nullopt});
  const std::vector<Point> x0{f2.identity()};
  const GenSet a = symmetrize(GenSet(f2.generators()));
  const FiniteModel model = build_model(*action, a, x0, 1.0, {ModelMode::kLazy, {}});
  const auto report = verify_model(model, model.metric().base, 1.0);
  o.require(model.params().k == 4, "k = 4");
  o.require(model.quotient().radius() == 8, "radius 8");
  o.require(model.quotient().ball_size() == 13121, "ball size 13121");
  bool all_two = true;
  for (const auto& r : report.records) {
    const bool same = r.g == r.h && r.x == r.y;
    all_two = all_two && r.eta == (same ? 0.0 : 2.0);
  }
  o.require(all_two, "eta = 2 on distinct pairs");
  o.require(report.pass, "verification passes");
  const std::size_t bound = product_set(a, 4, 1u << 20).size() * x0.size();
  o.require(report.explored_vertices <= bound, "explored <= |A^4||X0|");
  o.detail << "k=" << model.params().k << " R=" << model.quotient().radius() << " ball=" << model.quotient().ball_size()
           << " explored=" << report.explored_vertices << " <= " << bound;
}

// (4)
void metric_and_isometry(Outcome& o) {
  std::size_t models = 0;
  std::size_t checked_pairs = 0;
  for (const auto& inst : instances_1_2()) {
    std::optional<FiniteModel> model;
    try {
      model.emplace(build_model(inst.group, inst.window, inst.epsilon, {}));
    } catch (const BudgetExceeded& e) {
      o.require(false, inst.name + " materialization: " + e.what());
      continue;
    }
    ++models;
    const std::size_t n = model->vertex_count();
    const auto& d = model->distances();
    o.require(validate_pseudometric(d.data(), n, 1e-9).ok(), inst.name + " pseudometric axioms");
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v) o.require(d(u, v) > 0.0, inst.name + " distinct vertices apart");
      }
    }
    for (const auto& [g, perm] : model->psi()) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          o.require(std::abs(d(perm[u], perm[v]) - d(u, v)) <= 1e-9, inst.name + " psi isometry for " + g);
          ++checked_pairs;
        }
      }
    }
  }
  o.detail << models << " materialized models, " << checked_pairs << " isometry pairs checked";
}

// (5)
void quotient_certificates(Outcome& o) {
  std::size_t certified = 0;
  const auto certify = [&](const FiniteQuotient& q, const std::string& name) {
    const GenSet b = q.certified_set(1u << 20);
    o.require(check_injective(q, b, 1u << 20).injective(), name + " injective on A^k");
    ++certified;
  };
  for (const auto& inst : instances_1_2()) {
    const int k = build_epsilon_metric(inst.window, inst.epsilon).k;
    certify(quotient_for(inst.group, inst.window.a, k, Caps{}), inst.name);
  }
  const Group f2 = Group::free(2);
  certify(quotient_for(f2, symmetrize(GenSet(f2.generators())), 4, Caps{}), "F2 k=4");
  const Group ff = Group::product(Group::free(1), Group::free(1));
  certify(quotient_for(ff, symmetrize(GenSet({GroupElement::product(w({1}), w({1})),
                                              GroupElement::product(w({1}), w({}))})),
                       2, Caps{}),
          "F1xF1 k=2");

  const GenSet b = product_set(symmetrize(GenSet({z(1)})), 6, 1000);
  const auto neg = check_injective(lattice_quotient_with_modulus(1, 12), b, 1000);
  const bool found = neg.collisions.size() == 1 &&
                     ((neg.collisions[0].first == z(-6) && neg.collisions[0].second == z(6)) ||
                      (neg.collisions[0].first == z(6) && neg.collisions[0].second == z(-6)));
  o.require(found, "Z -> Z/12 reports (-6, 6)");

  std::size_t words = 0;
  for (const int radius : {6, 8}) {
    const FiniteQuotient q = free_ball_quotient(2, radius, 1u << 20);
    for (const auto& g : product_set(symmetrize(GenSet(f2.generators())), 6, 1u << 20)) {
      const auto idx = q.ball_index(g);
      o.require(idx && std::get<Permutation>(q.apply(g).components[0])(0) == *idx, "pi(w)(e) = w");
      ++words;
    }
  }
  o.detail << certified << " certificates checked, Z/12 collision found, basepoint property on " << words
           << " (word, radius) pairs";
}

// (6)
void sharp_norm(Outcome& o) {
  const GenSet a({z(0), z(1), z(-1), z(2), z(-2)});
  const NormApproximation approx = approximate_seminorm(Group::lattice(1), Seminorm::word({1.0}), a, 1.0);
  o.require(approx.group.size() == 41, "H = Z/41");
  o.require(approx.params.quotient["modulus"] == 41, "modulus 41");
  for (const auto& s : approx.samples) {
    const double expect = s.g.is_identity() ? 0.0 : std::abs(static_cast<double>(s.g.vec().coords[0])) + 1.0;
    o.require(std::abs(s.rho - expect) <= 1e-9, "rho(phi(" + element_text(s.g) + "))");
  }
  const NormReport validation = validate_norm(approx.group, 1e-9);
  o.require(validation.ok(), "validate_norm");
  o.detail << "|H|=" << approx.group.size() << " samples=" << approx.samples.size()
           << " norm violations=" << validation.violation_count;
}

// (7)
void hamming(Outcome& o) {
  for (std::uint32_t n = 2; n <= 12; ++n) {
    std::vector<std::uint32_t> swap(n);
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[0], swap[1]);
    std::vector<std::uint32_t> cycle(n);
    for (std::uint32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    o.require(hamming_length(Permutation::identity(n)) == 0.0, "l(id) = 0");
    o.require(hamming_length(Permutation(swap)) == 2.0 / n, "l(transposition) = 2/n");
    o.require(hamming_length(Permutation(cycle)) == 1.0, "l(n-cycle) = 1");
  }
  std::mt19937_64 rng(1234);
  const auto random_perm = [&] {
    std::vector<std::uint32_t> img(8);
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(img);
  };
  for (int t = 0; t < 1000; ++t) {
    const auto r = random_perm();
    const auto s = random_perm();
    const auto u = random_perm();
    const double d = hamming_distance(s, u);
    o.require(hamming_distance(r * s, r * u) == d && hamming_distance(s * r, u * r) == d, "bi-invariance");
  }
  o.detail << "formulas for n=2..12, 1000 random triples in Sym(8)";
}

// (8)
void sequence_envelope(Outcome& o) {
  SequencePlan plan{Group::lattice(1), finact::testing::integer_window(), {1.0, 1.0 / 2, 1.0 / 3, 1.0 / 4}};
  const SequenceTrace trace = run_sequence(plan);
  o.require(trace.stages.size() == 4 && !trace.partial, "four stages");
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    const double dev = trace.stages[i].max_deviation;
    const double eps = plan.schedule[i];
    o.require(std::abs(dev - eps) <= 1e-9, "deviation equals epsilon_n");
    o.require(dev <= eps + 1e-9, "deviation within epsilon_n");
    o.detail << (i ? ", " : "deviations ") << dev;
  }
}

// (9)
void proof_trace(Outcome& o) {
  std::size_t paths = 0;
  std::size_t settled = 0;
  std::size_t longest = 0;
  for (const auto& inst : instances_1_2()) {
    const FiniteModel model = build_model(inst.group, inst.window, inst.epsilon, {ModelMode::kLazy, {}});
    const auto& a = model.metric().base.a;
    const auto images = model.window_images();
    const FiniteQuotient& q = model.quotient();
    const int k = model.params().k;
    for (std::size_t x = 0; x < model.point_count(); ++x) {
      const LazySearch profile = model.eta_profile(x);
      // Every settled vertex: the lifted chain from b_0 = e lands on its quotient label.
      for (const auto& entry : profile.settled) {
        const auto path = profile.path_to(entry.vertex);
        const std::size_t edges = path.size() - 1;
        longest = std::max(longest, edges);
        o.require(2 * edges <= static_cast<std::size_t>(k), inst.name + " settled path has <= k/2 edges");
        GroupElement b = inst.group.identity();
        for (std::size_t j = 1; j < path.size(); ++j) {
          b = multiply(multiply(b, inverse(a[path[j]->label.g])), a[path[j]->label.h]);
        }
        o.require(q.apply(b) == entry.vertex.q, inst.name + " lifted chain projects to the settled vertex");
        ++settled;
      }
      for (std::size_t g = 0; g < a.size(); ++g) {
        for (std::size_t h = 0; h < a.size(); ++h) {
          for (std::size_t y = 0; y < model.point_count(); ++y) {
            const LazyVertex target{inverse(images[g]) * images[h], static_cast<std::uint32_t>(y)};
            const auto path = profile.path_to(target);
            o.require(!path.empty(), inst.name + " target reached");
            if (path.empty()) continue;
            const std::size_t edges = path.size() - 1;
            longest = std::max(longest, edges);
            o.require(2 * edges <= static_cast<std::size_t>(k), inst.name + " path has <= k/2 edges");
            GroupElement b = a[g];
            for (std::size_t j = 1; j < path.size(); ++j) {
              const ArcLabel label = path[j]->label;
              b = multiply(multiply(b, inverse(a[label.g])), a[label.h]);
            }
            o.require(q.apply(b) == images[h], inst.name + " pi(b_n) = pi(h)");
            o.require(b == a[h], inst.name + " b_n = h");
            ++paths;
          }
        }
      }
    }
  }
  o.detail << paths << " window paths and " << settled << " settled paths lifted, longest has " << longest
           << " edges";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "exact equality on the Z-translation window", 1.0, exact_equality},
      {2, "lazy eta agrees with the Floyd-Warshall oracle", 30.0, lazy_agreement},
      {3, "free group lazy verification", 10.0, free_group_lazy},
      {4, "metric axioms and psi-isometry of materialized models", 0.0, metric_and_isometry},
      {5, "quotient certificates", 0.0, quotient_certificates},
      {6, "sharp seminorm approximation on Z/41", 5.0, sharp_norm},
      {7, "Hamming formulas and bi-invariance", 0.0, hamming},
      {8, "sequence envelope for epsilon_n = 1/n", 5.0, sequence_envelope},
      {9, "proof-trace oracle", 0.0, proof_trace},
  };
  // Warm the shared instance list so its generation is not charged to one criterion.
  random_instances();
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    if (c.budget_seconds > 0.0) o.require(elapsed < c.budget_seconds, "runtime budget");
    std::printf("criterion %d %s: %s [%s] (%.3f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str(),
                elapsed);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
