#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "finact/cli.hpp"
#include "finact/error.hpp"
#include "finact/io.hpp"

using namespace finact;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FINACT_FIXTURE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "finact_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json load(const fs::path& p) { return parse_json(read_file(p)); }

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "finact");
  return run_command(args);
}

std::string error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("problem parsing errors name a JSON path") {
  const std::string base =
      R"({"group":{"family":"lattice","dim":1},"action":{"kind":"translation"},"A":[[1]],)";
  CHECK(error_of(base + R"("X0":[[0]]})").find("$.epsilon") != std::string::npos);
  CHECK(error_of(base + R"("epsilon":0})").find("$.epsilon") != std::string::npos);
  CHECK(error_of(base + R"("epsilon":1,"A":[[1,2]]})").find("$.A[0]") != std::string::npos);
  CHECK(error_of(base + R"("epsilon":1,"mode":"fast"})").find("$.mode") != std::string::npos);
  CHECK(error_of(base + R"("epsilon":1,"caps":{"max_vertices":0}})").find("$.caps.max_vertices") !=
        std::string::npos);
  CHECK(error_of("{").find("syntax") != std::string::npos);
  CHECK(error_of(R"({"group":{"family":"lattice","dim":1},"action":{"kind":"spin"},"A":[[1]],"epsilon":1})")
            .find("$.action.kind") != std::string::npos);
}

TEST_CASE("problems round-trip through JSON") {
  for (const char* name : {"z_translation.json", "sabotaged_table.json", "f2_lazy.json", "left_right.json"}) {
    const ProblemSpec spec = parse_problem(read_file(kFixtures / name));
    CHECK_MESSAGE(problem_from_json(problem_to_json(spec)) == spec, name);
  }
  const ProblemSpec seq = problem_from_json(load(kFixtures / "sequence_z.json"), false);
  CHECK(seq.schedule.size() == 4);
  CHECK(seq.schedule[2] == 1.0 / 3.0);
  CHECK(problem_from_json(problem_to_json(seq), false) == seq);

  for (const char* name : {"norm_z.json", "pullback_norm.json"}) {
    const NormProblem p = norm_problem_from_json(load(kFixtures / name));
    CHECK_MESSAGE(norm_problem_from_json(norm_problem_to_json(p)) == p, name);
  }
  const DemoConfig demo = demo_config_from_json(load(kFixtures / "demo_f1.json"));
  CHECK(demo_config_from_json(demo_config_to_json(demo)) == demo);
}

TEST_CASE("left-right problems infer the product group") {
  const ProblemSpec spec = parse_problem(read_file(kFixtures / "left_right.json"));
  CHECK(spec.group == Group::product(Group::free(2), Group::free(2)));
  CHECK(spec.x0.size() == 1);
}

TEST_CASE("cli: build, verify and exit codes") {
  const auto model = scratch("model.json");
  CHECK(run({"build", "--in", (kFixtures / "z_translation.json").string(), "--out", model.string()}) == kExitOk);
  const auto m = load(model);
  CHECK(m["vertices"].size() == 13);
  CHECK(m["params"]["k"] == 6);
  CHECK(m["params"]["quotient"]["modulus"] == 13);

  const auto again = scratch("model2.json");
  CHECK(run({"build", "--in", (kFixtures / "z_translation.json").string(), "--out", again.string(), "--seed", "17"}) ==
        kExitOk);
  CHECK(read_file(model) == read_file(again));

  const auto report = scratch("report.json");
  CHECK(run({"verify", "--in", (kFixtures / "sabotaged_table.json").string(), "--out", report.string()}) ==
        kExitVerification);
  const auto r = load(report);
  CHECK(r["pass"] == false);
  bool failing_pair = false;
  for (const auto& rec : r["records"]) failing_pair = failing_pair || std::abs(rec["residual"].get<double>()) > 1e-9;
  CHECK(failing_pair);

  CHECK(run({"verify", "--in", (kFixtures / "f2_lazy.json").string(), "--out", report.string()}) == kExitOk);
  CHECK(run({"verify", "--in", (kFixtures / "left_right.json").string(), "--out", report.string()}) == kExitOk);
  CHECK(run({"verify", "--in", (kFixtures / "z_translation.json").string(), "--out", report.string(), "--mode",
             "lazy"}) == kExitOk);
  CHECK(run({"frobnicate", "--in", "x", "--out", "y"}) == kExitInput);
  CHECK(run({"build", "--in", (kFixtures / "missing.json").string(), "--out", model.string()}) == kExitInput);
  CHECK(run({"build", "--in", (kFixtures / "z_translation.json").string()}) == kExitInput);
  CHECK(run({"build", "--in", (kFixtures / "z_translation.json").string(), "--out", model.string(), "--mode",
             "fast"}) == kExitInput);
}

TEST_CASE("cli: budget exceeded") {
  const auto problem = scratch("capped.json");
  auto j = load(kFixtures / "z_translation.json");
  j["caps"] = {{"max_quotient_order", 5}};
  std::ofstream(problem) << j.dump();
  CHECK(run({"build", "--in", problem.string(), "--out", scratch("o.json").string()}) == kExitBudget);

  ::setenv("FINACT_MAX_VERTICES", "3", 1);
  CHECK(default_max_vertices() == 3);
  CHECK(run({"verify", "--in", (kFixtures / "f2_lazy.json").string(), "--out", scratch("o.json").string()}) ==
        kExitBudget);
  ::unsetenv("FINACT_MAX_VERTICES");
  CHECK(default_max_vertices() == 1000000);
}

TEST_CASE("cli: norm-approx, demo-sofic and sequence") {
  const auto out = scratch("h.json");
  const auto rep = scratch("h_report.json");
  CHECK(run({"norm-approx", "--in", (kFixtures / "norm_z.json").string(), "--out", out.string(), "--report",
             rep.string()}) == kExitOk);
  const auto h = load(out);
  CHECK(h["elements"].size() == 41);
  CHECK(h["mul"].size() == 41);
  CHECK(load(rep)["pass"] == true);
  CHECK(run({"norm-approx", "--in", (kFixtures / "pullback_norm.json").string(), "--out", out.string()}) == kExitOk);

  CHECK(run({"demo-sofic", "--in", (kFixtures / "demo_f1.json").string(), "--out", out.string()}) == kExitOk);
  CHECK(load(out)["report"]["pass"] == true);

  CHECK(run({"sequence", "--in", (kFixtures / "sequence_z.json").string(), "--out", out.string()}) == kExitOk);
  const auto trace = load(out);
  REQUIRE(trace["stages"].size() == 4);
  CHECK(trace["stages"][3]["max_deviation"].get<double>() == doctest::Approx(0.25));
  CHECK(trace["partial"] == false);
}

TEST_CASE("atomic writes leave no temporaries") {
  const auto target = scratch("atomic.txt");
  write_atomic(target, "one");
  write_atomic(target, "two");
  CHECK(read_file(target) == "two");
  for (const auto& entry : fs::directory_iterator(target.parent_path())) {
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  }
  CHECK_THROWS(write_atomic(scratch("no/such/dir/file"), "x"));
}
