#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "finact/action.hpp"
#include "finact/caps.hpp"
#include "finact/group.hpp"
#include "finact/hamming.hpp"
#include "finact/model.hpp"
#include "finact/norm.hpp"
#include "finact/sequence.hpp"
#include "json.hpp"

namespace finact {

/// User-supplied window: {"kind":"table","A":[…],"X0":["p0",…],"kappa":[[…],…]}.
/// kappa entries are numbers or "p/q" strings.
struct TableSpec {
  std::vector<GroupElement> a;
  std::vector<std::string> x0;
  std::vector<double> kappa;  // row-major, in the order of `a` as given

  bool operator==(const TableSpec&) const = default;
};

struct ProblemSpec {
  Group group;
  std::variant<ActionSpec, TableSpec> action;
  std::vector<GroupElement> a;  // builtin actions only
  std::vector<Point> x0;        // builtin actions only
  double epsilon = 0.0;
  ModelMode mode = ModelMode::kMaterialized;
  Caps caps;
  double tol = 1e-9;
  std::vector<double> schedule;  // sequence runs only

  bool operator==(const ProblemSpec&) const = default;
};

struct NormProblem {
  Group group;
  Seminorm seminorm;
  std::vector<GroupElement> a;
  double epsilon = 0.0;
  Caps caps;
  double tol = 1e-9;

  bool operator==(const NormProblem&) const = default;
};

/// Parses JSON text; errors are InputError messages starting with a JSON path.
nlohmann::json parse_json(std::string_view text);

ProblemSpec parse_problem(std::string_view text);
/// `require_epsilon` is false for sequence plans, where "schedule" stands in.
ProblemSpec problem_from_json(const nlohmann::json& j, bool require_epsilon = true);
nlohmann::json problem_to_json(const ProblemSpec& spec);

NormProblem norm_problem_from_json(const nlohmann::json& j);
nlohmann::json norm_problem_to_json(const NormProblem& problem);

/// {"hom":{"target_order":n,"gen_images":[…]},"A_F":[…],"epsilon":e}
DemoConfig demo_config_from_json(const nlohmann::json& j);
nlohmann::json demo_config_to_json(const DemoConfig& config);

/// Window of a problem: builtin actions are sampled on sym(A) x X0.
SampledAction problem_window(const ProblemSpec& spec);

std::string_view mode_name(ModelMode mode);

nlohmann::json model_to_json(const FiniteModel& model);
nlohmann::json report_to_json(const VerificationReport& report, const SampledAction& window);
nlohmann::json normed_group_to_json(const FiniteNormedGroup& h, const std::map<std::string, std::size_t>& phi);
FiniteNormedGroup normed_group_from_json(const nlohmann::json& j, const std::string& path = "$");
nlohmann::json norm_report_to_json(const NormApproximation& approx, const NormReport& validation, double epsilon,
                                   double tol);
nlohmann::json trace_to_json(const SequenceTrace& trace);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace finact
