#include "finact/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "finact/error.hpp"
#include "finact/io.hpp"

namespace finact {
namespace {

using nlohmann::json;

struct Options {
  std::string in;
  std::string out;
  std::string report;
  std::string mode;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;  // accepted for reproducible drivers; the pipeline is deterministic
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ModelMode mode_override(const Options& opt, ModelMode fallback) {
  if (opt.mode.empty()) return fallback;
  if (opt.mode == "materialize" || opt.mode == "materialized") return ModelMode::kMaterialized;
  if (opt.mode == "lazy") return ModelMode::kLazy;
  throw InputError("--mode: expected materialize or lazy, got '" + opt.mode + "'");
}

ProblemSpec load_problem(const Options& opt, bool require_epsilon) {
  ProblemSpec spec = problem_from_json(parse_json(read_file(opt.in)), require_epsilon);
  spec.mode = mode_override(opt, spec.mode);
  if (opt.tol) spec.tol = *opt.tol;
  return spec;
}

int cmd_build(const Options& opt) {
  const ProblemSpec spec = load_problem(opt, true);
  const SampledAction window = problem_window(spec);
  const FiniteModel model = build_model(spec.group, window, spec.epsilon, {spec.mode, spec.caps});
  write_atomic(opt.out, dump(model_to_json(model)));
  std::cerr << "build: k=" << model.params().k << " m=" << model.params().m;
  if (model.mode() == ModelMode::kMaterialized) std::cerr << " vertices=" << model.vertex_count();
  std::cerr << "\n";
  if (!opt.report.empty()) {
    const VerificationReport report = verify_model(model, window, spec.epsilon, spec.tol);
    write_atomic(opt.report, dump(report_to_json(report, window)));
    if (!report.pass) {
      std::cerr << "build: verification failed (max |eta - d_eps| = " << report.max_abs_residual << ")\n";
      return kExitVerification;
    }
  }
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const ProblemSpec spec = load_problem(opt, true);
  const SampledAction window = problem_window(spec);
  const FiniteModel model = build_model(spec.group, window, spec.epsilon, {spec.mode, spec.caps});
  const VerificationReport report = verify_model(model, window, spec.epsilon, spec.tol);
  write_atomic(opt.out, dump(report_to_json(report, window)));
  std::cerr << "verify: " << (report.pass ? "pass" : "FAIL") << " max|eta-d_eps|=" << report.max_abs_residual
            << " max|eta-d|=" << report.max_deviation << "\n";
  return report.pass ? kExitOk : kExitVerification;
}

int cmd_norm(const Options& opt) {
  NormProblem problem = norm_problem_from_json(parse_json(read_file(opt.in)));
  if (opt.tol) problem.tol = *opt.tol;
  const NormApproximation approx =
      approximate_seminorm(problem.group, problem.seminorm, GenSet(problem.a), problem.epsilon, problem.caps);
  const NormReport validation = validate_norm(approx.group, problem.tol);
  write_atomic(opt.out, dump(normed_group_to_json(approx.group, approx.phi)));
  const json report = norm_report_to_json(approx, validation, problem.epsilon, problem.tol);
  if (!opt.report.empty()) write_atomic(opt.report, dump(report));
  const bool pass = report["pass"].get<bool>();
  std::cerr << "norm-approx: |H|=" << approx.group.size() << " max deviation=" << approx.max_deviation << " "
            << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kExitOk : kExitVerification;
}

int cmd_demo(const Options& opt) {
  DemoConfig config = demo_config_from_json(parse_json(read_file(opt.in)));
  config.mode = mode_override(opt, config.mode);
  if (opt.tol) config.tol = *opt.tol;
  const DemoResult result = left_right_demo(config);
  json out = {{"report", report_to_json(result.report, result.model.metric().base)},
              {"params", model_to_json(result.model)["params"]}};
  write_atomic(opt.out, dump(out));
  std::cerr << "demo-sofic: " << (result.report.pass ? "pass" : "FAIL") << "\n";
  return result.report.pass ? kExitOk : kExitVerification;
}

int cmd_sequence(const Options& opt) {
  const ProblemSpec spec = load_problem(opt, false);
  if (spec.schedule.empty()) throw InputError("$.schedule: missing required field");
  SequencePlan plan{spec.group, problem_window(spec), spec.schedule, spec.mode, spec.caps, spec.tol};
  const SequenceTrace trace = run_sequence(plan);
  write_atomic(opt.out, dump(trace_to_json(trace)));
  std::cerr << "sequence: " << trace.stages.size() << " stage(s)";
  if (trace.partial) std::cerr << ", stopped: " << trace.stop_reason;
  std::cerr << "\n";
  if (trace.partial) return kExitBudget;
  return trace.all_pass() ? kExitOk : kExitVerification;
}

}  // namespace

int run_command(const std::vector<std::string>& argv) {
  CLI::App app{"Finite isometric models of sampled group actions", "finact"};
  app.require_subcommand(1);
  Options opt;
  int (*handler)(const Options&) = nullptr;

  const auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--in", opt.in, "input JSON")->required();
    sub->add_option("--out", opt.out, "output JSON")->required();
    sub->add_option("--report", opt.report, "optional report JSON");
    sub->add_option("--mode", opt.mode, "materialize | lazy");
    sub->add_option("--tol", opt.tol, "verification tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opt.seed, "reserved; output does not depend on it");
    sub->callback([&handler, fn] { handler = fn; });
  };
  add("build", "build a finite model", cmd_build);
  add("verify", "build and verify a finite model", cmd_verify);
  add("norm-approx", "approximate a seminorm by a finite normed group", cmd_norm);
  add("demo-sofic", "left-right action on a finite quotient", cmd_demo);
  add("sequence", "run a decreasing-epsilon model sequence", cmd_sequence);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    return handler(opt);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace finact
