#include "finact/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "finact/error.hpp"

namespace finact {

bool SequenceTrace::all_pass() const {
  return !partial && std::all_of(stages.begin(), stages.end(), [](const StageRecord& s) { return s.pass; });
}

SequenceTrace run_sequence(const SequencePlan& plan) {
  if (plan.schedule.empty()) throw InputError("sequence schedule is empty");
  for (std::size_t i = 0; i < plan.schedule.size(); ++i) {
    if (!(plan.schedule[i] > 0.0) || !std::isfinite(plan.schedule[i])) {
      throw InputError("sequence schedule entries must be positive");
    }
    if (i > 0 && !(plan.schedule[i] < plan.schedule[i - 1])) {
      throw InputError("sequence schedule must be strictly decreasing");
    }
  }

  SequenceTrace trace;
  for (const double epsilon : plan.schedule) {
    try {
      const FiniteModel model = build_model(plan.group, plan.window, epsilon, {plan.mode, plan.caps});
      const VerificationReport report = verify_model(model, plan.window, epsilon, plan.tol);
      StageRecord stage;
      stage.epsilon = epsilon;
      stage.k = model.params().k;
      stage.quotient = model.params().quotient;
      stage.max_deviation = report.max_deviation;
      stage.max_abs_residual = report.max_abs_residual;
      for (const auto& r : report.records) {
        if (r.g == r.h && r.x == r.y) continue;
        stage.deviation_spread = std::max(stage.deviation_spread, std::abs(std::abs(r.eta - r.d) - epsilon));
      }
      stage.pass = report.pass;
      trace.stages.push_back(std::move(stage));
    } catch (const BudgetExceeded& err) {
      trace.partial = true;
      trace.stop_reason = "stage epsilon=" + std::to_string(epsilon) + ": " + err.what();
      break;
    }
  }

  const std::size_t n = trace.stages.size();
  trace.tail_sup.assign(n, 0.0);
  trace.tail_inf.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    const double v = trace.stages[i].max_deviation;
    trace.tail_sup[i] = i + 1 < n ? std::max(v, trace.tail_sup[i + 1]) : v;
    trace.tail_inf[i] = i + 1 < n ? std::min(v, trace.tail_inf[i + 1]) : v;
  }
  return trace;
}

}  // namespace finact
