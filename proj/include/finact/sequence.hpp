#pragma once

#include <string>
#include <vector>

#include "finact/action.hpp"
#include "finact/caps.hpp"
#include "finact/group.hpp"
#include "finact/model.hpp"
#include "json.hpp"

namespace finact {

/// A fixed window modelled at each ε of a strictly decreasing positive schedule.
struct SequencePlan {
  Group group;
  SampledAction window;
  std::vector<double> schedule;
  ModelMode mode = ModelMode::kMaterialized;
  Caps caps;
  double tol = 1e-9;
};

struct StageRecord {
  double epsilon = 0.0;
  int k = 0;
  nlohmann::json quotient;
  double max_deviation = 0.0;     // max |η_n - d|
  double max_abs_residual = 0.0;  // max |η_n - d_ε|
  /// max over pairs with d_st = 1 of ||η_n - d| - ε|; zero when deviations are exactly ε.
  double deviation_spread = 0.0;
  bool pass = false;
};

struct SequenceTrace {
  std::vector<StageRecord> stages;
  /// sup and inf of max_deviation over stages n, n+1, ...
  std::vector<double> tail_sup;
  std::vector<double> tail_inf;
  bool partial = false;
  std::string stop_reason;
  bool all_pass() const;
};

/// Runs every stage in order; a BudgetExceeded stops the run and returns the
/// stages completed so far with `partial` set.
SequenceTrace run_sequence(const SequencePlan& plan);

}  // namespace finact
