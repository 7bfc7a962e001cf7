#include "finact/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "finact/error.hpp"

namespace finact {
namespace {

using nlohmann::json;

std::string at_key(const std::string& path, std::string_view key) { return path + "." + std::string(key); }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& required(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw InputError(at_key(path, key) + ": missing required field");
  return *it;
}

const json& required_array(const json& j, std::string_view key, const std::string& path) {
  const json& v = required(j, key, path);
  if (!v.is_array()) throw InputError(at_key(path, key) + ": expected a list");
  return v;
}

double number_or_rational(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
      } else {
        const std::string p = s.substr(0, slash);
        const std::string q = s.substr(slash + 1);
        std::size_t used_p = 0;
        std::size_t used_q = 0;
        const long long num = std::stoll(p, &used_p);
        const long long den = std::stoll(q, &used_q);
        if (used_p == p.size() && used_q == q.size() && den != 0) {
          return static_cast<double>(num) / static_cast<double>(den);
        }
      }
    } catch (const std::exception&) {
    }
    throw InputError(path + ": expected a number or a rational \"p/q\", got \"" + s + "\"");
  }
  throw InputError(path + ": expected a number");
}

double positive_number(const json& j, const std::string& path, std::string_view what) {
  const double v = number_or_rational(j, path);
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError(path + ": " + std::string(what) + " must be positive");
  return v;
}

ModelMode parse_mode(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected \"materialize\" or \"lazy\"");
  const std::string s = j.get<std::string>();
  if (s == "materialize" || s == "materialized") return ModelMode::kMaterialized;
  if (s == "lazy") return ModelMode::kLazy;
  throw InputError(path + ": unknown mode '" + s + "' (expected \"materialize\" or \"lazy\")");
}

Caps parse_caps(const json& j, const std::string& path) {
  Caps caps;
  if (!j.is_object()) throw InputError(path + ": expected an object");
  const auto field = [&](const char* key, std::size_t& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number_integer() || it->get<std::int64_t>() <= 0) {
      throw InputError(at_key(path, key) + ": caps must be positive integers");
    }
    out = it->get<std::size_t>();
  };
  field("max_vertices", caps.max_vertices);
  field("max_quotient_order", caps.max_quotient_order);
  field("max_ball", caps.max_ball);
  field("max_matrix_vertices", caps.max_matrix_vertices);
  field("max_image_bytes", caps.max_image_bytes);
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known{"max_vertices", "max_quotient_order", "max_ball",
                                             "max_matrix_vertices", "max_image_bytes"};
    if (!known.contains(key)) throw InputError(at_key(path, key) + ": unknown cap");
  }
  return caps;
}

json caps_to_json(const Caps& caps) {
  return {{"max_vertices", caps.max_vertices},
          {"max_quotient_order", caps.max_quotient_order},
          {"max_ball", caps.max_ball},
          {"max_matrix_vertices", caps.max_matrix_vertices},
          {"max_image_bytes", caps.max_image_bytes}};
}

std::vector<GroupElement> parse_elements(const Group& group, const json& list, const std::string& path) {
  if (!list.is_array()) throw InputError(path + ": expected a list of elements");
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(group.parse_element(list[i], at_index(path, i)));
  return out;
}

json elements_to_json(const std::vector<GroupElement>& elements) {
  json out = json::array();
  for (const auto& g : elements) out.push_back(element_to_json(g));
  return out;
}

HomTable parse_hom(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  HomTable hom;
  if (j.contains("target")) {
    hom.target = Group::from_descriptor(j["target"], at_key(path, "target"));
    if (hom.target.family() != Family::kCyclic && hom.target.family() != Family::kPerm) {
      throw InputError(at_key(path, "target") + ": target must be a finite cyclic or permutation group");
    }
  } else {
    const json& order = required(j, "target_order", path);
    if (!order.is_number_integer() || order.get<std::int64_t>() < 1) {
      throw InputError(at_key(path, "target_order") + ": expected a positive integer");
    }
    hom.target = Group::cyclic(order.get<std::int64_t>());
  }
  hom.gen_images = parse_elements(hom.target, required_array(j, "gen_images", path), at_key(path, "gen_images"));
  if (hom.gen_images.empty()) throw InputError(at_key(path, "gen_images") + ": needs at least one image");
  return hom;
}

json hom_to_json(const HomTable& hom) {
  json j;
  if (hom.target.family() == Family::kCyclic) {
    j["target_order"] = hom.target.order();
  } else {
    j["target"] = hom.target.descriptor();
  }
  j["gen_images"] = elements_to_json(hom.gen_images);
  return j;
}

TableSpec parse_table(const Group& group, const json& j, const std::string& path) {
  TableSpec table;
  table.a = parse_elements(group, required_array(j, "A", path), at_key(path, "A"));
  const json& x0 = required_array(j, "X0", path);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (!x0[i].is_string()) throw InputError(at_index(at_key(path, "X0"), i) + ": point ids must be strings");
    table.x0.push_back(x0[i].get<std::string>());
  }
  const json& kappa = required_array(j, "kappa", path);
  const std::size_t n = table.a.size() * table.x0.size();
  if (kappa.size() != n) {
    throw InputError(at_key(path, "kappa") + ": expected " + std::to_string(n) + " rows (|A| * |X0|)");
  }
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row_path = at_index(at_key(path, "kappa"), r);
    if (!kappa[r].is_array() || kappa[r].size() != n) {
      throw InputError(row_path + ": expected a row of " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) table.kappa.push_back(number_or_rational(kappa[r][c], at_index(row_path, c)));
  }
  return table;
}

ActionSpec::Kind parse_action_kind(const std::string& kind, const std::string& path) {
  if (kind == "translation") return ActionSpec::Kind::kTranslation;
  if (kind == "left-discrete") return ActionSpec::Kind::kLeftDiscrete;
  if (kind == "left-word") return ActionSpec::Kind::kLeftWord;
  if (kind == "left-right") return ActionSpec::Kind::kLeftRight;
  throw InputError(path + ": unknown action kind '" + kind + "'");
}

json point_to_json(const Point& p) {
  if (const auto* g = std::get_if<GroupElement>(&p)) return element_to_json(*g);
  return std::get<std::vector<double>>(p);
}

void require_unique_labels(const std::vector<std::string>& labels, const std::string& path) {
  const std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw InputError(path + ": window points must be distinct");
}

double optional_tol(const json& j, const std::string& path) {
  if (!j.contains("tol")) return 1e-9;
  const double tol = number_or_rational(j["tol"], at_key(path, "tol"));
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InputError(at_key(path, "tol") + ": must be nonnegative");
  return tol;
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("$: syntax error: ") + err.what());
  }
}

std::string_view mode_name(ModelMode mode) { return mode == ModelMode::kLazy ? "lazy" : "materialize"; }

ProblemSpec parse_problem(std::string_view text) { return problem_from_json(parse_json(text)); }

ProblemSpec problem_from_json(const json& j, bool require_epsilon) {
  const std::string root = "$";
  if (!j.is_object()) throw InputError("$: expected an object");
  ProblemSpec spec;

  const json& action = required(j, "action", root);
  const std::string action_path = at_key(root, "action");
  const std::string kind = required(action, "kind", action_path).is_string()
                               ? required(action, "kind", action_path).get<std::string>()
                               : throw InputError(at_key(action_path, "kind") + ": expected a string");

  std::optional<HomTable> hom;
  if (kind == "left-right") hom = parse_hom(required(action, "hom", action_path), at_key(action_path, "hom"));
  if (j.contains("group")) {
    spec.group = Group::from_descriptor(j["group"], at_key(root, "group"));
  } else if (hom) {
    const auto rank = static_cast<int>(hom->gen_images.size());
    spec.group = Group::product(Group::free(rank), Group::free(rank));
  } else {
    throw InputError("$.group: missing required field");
  }

  if (kind == "table") {
    TableSpec table = parse_table(spec.group, action, action_path);
    require_unique_labels(table.x0, at_key(action_path, "X0"));
    spec.action = std::move(table);
  } else {
    ActionSpec as{parse_action_kind(kind, at_key(action_path, "kind")), hom};
    const auto handle = make_builtin_action(spec.group, as);
    spec.a = parse_elements(spec.group, required_array(j, "A", root), at_key(root, "A"));
    if (spec.a.empty()) throw InputError("$.A: must be nonempty");
    if (j.contains("X0")) {
      const json& x0 = j["X0"];
      if (!x0.is_array() || x0.empty()) throw InputError("$.X0: expected a nonempty list");
      for (std::size_t i = 0; i < x0.size(); ++i) spec.x0.push_back(handle->parse_point(x0[i], at_index("$.X0", i)));
    } else {
      spec.x0.push_back(handle->base_point());
    }
    std::vector<std::string> labels;
    for (const auto& p : spec.x0) labels.push_back(point_label(p));
    require_unique_labels(labels, "$.X0");
    spec.action = std::move(as);
  }

  if (j.contains("schedule")) {
    const json& schedule = j["schedule"];
    if (!schedule.is_array() || schedule.empty()) throw InputError("$.schedule: expected a nonempty list");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      spec.schedule.push_back(positive_number(schedule[i], at_index("$.schedule", i), "epsilon"));
    }
  }
  if (j.contains("epsilon") || require_epsilon) {
    spec.epsilon = positive_number(required(j, "epsilon", root), "$.epsilon", "epsilon");
  } else if (!spec.schedule.empty()) {
    spec.epsilon = spec.schedule.front();
  } else {
    throw InputError("$.schedule: missing required field");
  }
  if (j.contains("mode")) spec.mode = parse_mode(j["mode"], "$.mode");
  if (j.contains("caps")) spec.caps = parse_caps(j["caps"], "$.caps");
  spec.tol = optional_tol(j, root);
  return spec;
}

json problem_to_json(const ProblemSpec& spec) {
  json j;
  j["group"] = spec.group.descriptor();
  if (const auto* table = std::get_if<TableSpec>(&spec.action)) {
    const std::size_t n = table->a.size() * table->x0.size();
    json kappa = json::array();
    for (std::size_t r = 0; r < n; ++r) {
      kappa.push_back(std::vector<double>(table->kappa.begin() + static_cast<std::ptrdiff_t>(r * n),
                                          table->kappa.begin() + static_cast<std::ptrdiff_t>((r + 1) * n)));
    }
    j["action"] = {{"kind", "table"}, {"A", elements_to_json(table->a)}, {"X0", table->x0}, {"kappa", kappa}};
  } else {
    const auto& as = std::get<ActionSpec>(spec.action);
    j["action"] = {{"kind", std::string(action_kind_name(as.kind))}};
    if (as.hom) j["action"]["hom"] = hom_to_json(*as.hom);
    j["A"] = elements_to_json(spec.a);
    json x0 = json::array();
    for (const auto& p : spec.x0) x0.push_back(point_to_json(p));
    j["X0"] = x0;
  }
  j["epsilon"] = spec.epsilon;
  j["mode"] = std::string(mode_name(spec.mode));
  j["caps"] = caps_to_json(spec.caps);
  j["tol"] = spec.tol;
  if (!spec.schedule.empty()) j["schedule"] = spec.schedule;
  return j;
}

SampledAction problem_window(const ProblemSpec& spec) {
  if (const auto* table = std::get_if<TableSpec>(&spec.action)) {
    return table_action(table->a, table->x0, table->kappa);
  }
  const auto handle = make_builtin_action(spec.group, std::get<ActionSpec>(spec.action));
  return sample_action(*handle, symmetrize(GenSet(spec.a)), spec.x0);
}

NormProblem norm_problem_from_json(const json& j) {
  if (!j.is_object()) throw InputError("$: expected an object");
  NormProblem problem;
  problem.group = Group::from_descriptor(required(j, "group", "$"), "$.group");
  const json& s = required(j, "seminorm", "$");
  const std::string kind_json_path = "$.seminorm.kind";
  const json& kind = required(s, "kind", "$.seminorm");
  if (!kind.is_string()) throw InputError(kind_json_path + ": expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "standard") {
    problem.seminorm = Seminorm::standard();
  } else if (k == "word") {
    const json& weights = required_array(s, "weights", "$.seminorm");
    std::vector<double> w;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      w.push_back(number_or_rational(weights[i], at_index("$.seminorm.weights", i)));
    }
    if (w.size() != problem.group.generators().size()) {
      throw InputError("$.seminorm.weights: expected one weight per generator (" +
                       std::to_string(problem.group.generators().size()) + ")");
    }
    problem.seminorm = Seminorm::word(std::move(w));
  } else if (k == "table") {
    Seminorm sn;
    sn.kind = Seminorm::Kind::kTable;
    const json& entries = required_array(s, "entries", "$.seminorm");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = at_index("$.seminorm.entries", i);
      if (!entries[i].is_array() || entries[i].size() != 2) throw InputError(p + ": expected [element, value]");
      sn.table.emplace_back(problem.group.parse_element(entries[i][0], p + "[0]"),
                            number_or_rational(entries[i][1], p + "[1]"));
    }
    problem.seminorm = std::move(sn);
  } else if (k == "pullback") {
    Seminorm sn;
    sn.kind = Seminorm::Kind::kPullback;
    sn.target = std::make_shared<const FiniteNormedGroup>(
        normed_group_from_json(required(s, "normed_group", "$.seminorm"), "$.seminorm.normed_group"));
    const json& images = required_array(s, "gen_images", "$.seminorm");
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!images[i].is_number_unsigned() || images[i].get<std::size_t>() >= sn.target->size()) {
        throw InputError(at_index("$.seminorm.gen_images", i) + ": expected an element index");
      }
      sn.gen_images.push_back(images[i].get<std::size_t>());
    }
    problem.seminorm = std::move(sn);
  } else {
    throw InputError(kind_json_path + ": unknown seminorm kind '" + k + "'");
  }
  problem.a = parse_elements(problem.group, required_array(j, "A", "$"), "$.A");
  if (problem.a.empty()) throw InputError("$.A: must be nonempty");
  problem.epsilon = positive_number(required(j, "epsilon", "$"), "$.epsilon", "epsilon");
  if (j.contains("caps")) problem.caps = parse_caps(j["caps"], "$.caps");
  problem.tol = optional_tol(j, "$");
  return problem;
}

json norm_problem_to_json(const NormProblem& problem) {
  json s = {{"kind", std::string(seminorm_kind_name(problem.seminorm.kind))}};
  switch (problem.seminorm.kind) {
    case Seminorm::Kind::kWord: s["weights"] = problem.seminorm.weights; break;
    case Seminorm::Kind::kStandard: break;
    case Seminorm::Kind::kTable: {
      json entries = json::array();
      for (const auto& [g, v] : problem.seminorm.table) entries.push_back(json::array({element_to_json(g), v}));
      s["entries"] = entries;
      break;
    }
    case Seminorm::Kind::kPullback:
      s["normed_group"] = normed_group_to_json(*problem.seminorm.target, {});
      s["gen_images"] = problem.seminorm.gen_images;
      break;
  }
  return {{"group", problem.group.descriptor()},
          {"seminorm", s},
          {"A", elements_to_json(problem.a)},
          {"epsilon", problem.epsilon},
          {"caps", caps_to_json(problem.caps)},
          {"tol", problem.tol}};
}

DemoConfig demo_config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("$: expected an object");
  DemoConfig config;
  config.hom = parse_hom(required(j, "hom", "$"), "$.hom");
  const Group free = Group::free(static_cast<int>(config.hom.gen_images.size()));
  config.a_f = parse_elements(free, required_array(j, "A_F", "$"), "$.A_F");
  if (config.a_f.empty()) throw InputError("$.A_F: must be nonempty");
  config.epsilon = positive_number(required(j, "epsilon", "$"), "$.epsilon", "epsilon");
  if (j.contains("mode")) config.mode = parse_mode(j["mode"], "$.mode");
  if (j.contains("caps")) config.caps = parse_caps(j["caps"], "$.caps");
  config.tol = optional_tol(j, "$");
  return config;
}

json demo_config_to_json(const DemoConfig& config) {
  return {{"hom", hom_to_json(config.hom)},
          {"A_F", elements_to_json(config.a_f)},
          {"epsilon", config.epsilon},
          {"mode", std::string(mode_name(config.mode))},
          {"caps", caps_to_json(config.caps)},
          {"tol", config.tol}};
}

json model_to_json(const FiniteModel& model) {
  const auto& p = model.params();
  json params = {{"epsilon", p.epsilon}, {"m", p.m}, {"k", p.k}, {"quotient", p.quotient}};
  params["D"] = std::isnan(p.D) ? json(nullptr) : json(p.D);
  if (model.mode() == ModelMode::kLazy) return {{"lazy", true}, {"params", params}};

  const auto& labels = model.metric().base.x0;
  json vertices = json::array();
  for (std::size_t id = 0; id < model.vertex_count(); ++id) {
    const LazyVertex v = model.vertex(id);
    vertices.push_back({{"id", id}, {"q", finite_to_json(v.q)}, {"x", labels[v.x]}});
  }
  json metric = json::array();
  for (std::size_t i = 0; i < model.vertex_count(); ++i) {
    const auto row = model.distances().row(i);
    metric.push_back(std::vector<double>(row.begin(), row.end()));
  }
  json psi = json::object();
  for (const auto& [g, perm] : model.psi()) psi[g] = perm;
  json f = json::object();
  const auto ids = model.f();
  for (std::size_t x = 0; x < labels.size(); ++x) f[labels[x]] = ids[x];
  return {{"lazy", false}, {"vertices", vertices}, {"metric", metric}, {"psi", psi}, {"f", f}, {"params", params}};
}

json report_to_json(const VerificationReport& report, const SampledAction& window) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"g", element_to_json(window.a[r.g])},
                       {"h", element_to_json(window.a[r.h])},
                       {"x", window.x0[r.x]},
                       {"y", window.x0[r.y]},
                       {"d", r.d},
                       {"d_eps", r.d_eps},
                       {"eta", r.eta},
                       {"residual", r.residual},
                       {"bound_residual", r.bound_residual}});
  }
  return {{"pass", report.pass},
          {"epsilon", report.epsilon},
          {"tol", report.tol},
          {"max_abs_residual", report.max_abs_residual},
          {"max_deviation", report.max_deviation},
          {"max_bound_residual", report.max_bound_residual},
          {"explored_vertices", report.explored_vertices},
          {"records", records}};
}

json normed_group_to_json(const FiniteNormedGroup& h, const std::map<std::string, std::size_t>& phi) {
  json mul = json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    mul.push_back(std::vector<std::size_t>(h.mul.begin() + static_cast<std::ptrdiff_t>(i * h.size()),
                                           h.mul.begin() + static_cast<std::ptrdiff_t>((i + 1) * h.size())));
  }
  json out = {{"elements", h.elements}, {"identity", h.identity}, {"mul", mul}, {"rho", h.rho}};
  json phi_json = json::object();
  for (const auto& [g, i] : phi) phi_json[g] = i;
  out["phi"] = phi_json;
  return out;
}

FiniteNormedGroup normed_group_from_json(const json& j, const std::string& path) {
  FiniteNormedGroup h;
  const json& elements = required_array(j, "elements", path);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    h.elements.push_back(elements[i].is_string() ? elements[i].get<std::string>() : elements[i].dump());
  }
  const std::size_t n = h.size();
  const json& mul = required_array(j, "mul", path);
  if (mul.size() != n) throw InputError(at_key(path, "mul") + ": expected a full " + std::to_string(n) + "-row table");
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = at_index(at_key(path, "mul"), r);
    if (!mul[r].is_array() || mul[r].size() != n) throw InputError(rp + ": expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) {
      if (!mul[r][c].is_number_unsigned() || mul[r][c].get<std::size_t>() >= n) {
        throw InputError(at_index(rp, c) + ": expected an element index");
      }
      h.mul.push_back(mul[r][c].get<std::size_t>());
    }
  }
  const json& rho = required_array(j, "rho", path);
  if (rho.size() != n) throw InputError(at_key(path, "rho") + ": expected " + std::to_string(n) + " values");
  for (std::size_t i = 0; i < n; ++i) h.rho.push_back(number_or_rational(rho[i], at_index(at_key(path, "rho"), i)));
  if (j.contains("identity")) {
    if (!j["identity"].is_number_unsigned() || j["identity"].get<std::size_t>() >= n) {
      throw InputError(at_key(path, "identity") + ": expected an element index");
    }
    h.identity = j["identity"].get<std::size_t>();
  }
  return h;
}

json norm_report_to_json(const NormApproximation& approx, const NormReport& validation, double epsilon, double tol) {
  json samples = json::array();
  bool guarantee = true;
  for (const auto& s : approx.samples) {
    const double expected = s.s + (s.g.is_identity() ? 0.0 : epsilon);
    guarantee = guarantee && std::abs(s.rho - expected) <= tol;
    samples.push_back({{"g", element_to_json(s.g)}, {"s", s.s}, {"rho", s.rho}, {"deviation", s.rho - s.s}});
  }
  json violations = json::array();
  for (const auto& v : validation.violations) {
    violations.push_back({{"kind", std::string(norm_violation_name(v.kind))}, {"i", v.i}, {"j", v.j}, {"k", v.k}});
  }
  const auto& p = approx.params;
  return {{"pass", validation.ok() && guarantee && approx.max_deviation <= epsilon + tol},
          {"norm_valid", validation.ok()},
          {"violation_count", validation.violation_count},
          {"violations", violations},
          {"sharp_guarantee", guarantee},
          {"max_deviation", approx.max_deviation},
          {"epsilon", epsilon},
          {"order", approx.group.size()},
          {"params", {{"epsilon", p.epsilon}, {"m", p.m}, {"k", p.k}, {"D", p.D}, {"quotient", p.quotient}}},
          {"samples", samples}};
}

json trace_to_json(const SequenceTrace& trace) {
  json stages = json::array();
  for (const auto& s : trace.stages) {
    stages.push_back({{"epsilon", s.epsilon},
                      {"k", s.k},
                      {"quotient", s.quotient},
                      {"max_deviation", s.max_deviation},
                      {"max_abs_residual", s.max_abs_residual},
                      {"deviation_spread", s.deviation_spread},
                      {"pass", s.pass}});
  }
  return {{"stages", stages},
          {"tail_sup", trace.tail_sup},
          {"tail_inf", trace.tail_inf},
          {"partial", trace.partial},
          {"stop_reason", trace.stop_reason},
          {"note",
           "finite-stage surrogate for an ultraproduct embedding: no ultrafilter limit is computed; "
           "tail_sup and tail_inf bound the window deviation of all later stages"}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace finact
