#pragma once

/**
 * Structured verdicts for numerical probes.
 *
 * Probes never claim proofs: each report carries the statistic trace, the
 * fitted growth model when one was computed, the offending inputs on a fail,
 * and the tolerances used, so a verdict is reproducible evidence rather than
 * a bare boolean. `inconclusive` is a first-class outcome.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eberlein {

struct GrowthFit {
  enum class Model { constant, logarithmic, power };
  Model model = Model::constant;
  double rate = 0.0;          // slope of the non-constant models
  double significance = 0.0;  // |rate| / stderr(rate)
  double level = 0.0;         // fitted constant / intercept
  double residual = 0.0;      // rms residual of the winning model
};

const char* to_string(GrowthFit::Model m);

struct ProbeReport {
  enum class Verdict { pass, fail, inconclusive };

  Verdict verdict = Verdict::inconclusive;
  std::vector<std::pair<double, double>> trace;  // (scale, statistic), scale increasing
  std::optional<GrowthFit> growth;
  std::vector<std::string> witnesses;
  double tolerance = 0.0;
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
  /// CLI exit code convention: pass/fail/inconclusive -> 0/1/2.
  int exit_code() const { return static_cast<int>(verdict); }
};

const char* to_string(ProbeReport::Verdict v);

/// Least-squares fit of the trace against {constant, a*log(x)+b, a*x^b},
/// picked by residual. Scales must be positive and increasing.
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& trace);

/// Relative stabilization of the tail of a trace: true when the last two
/// increments both changed by less than `rel_tol` of the running scale.
bool trace_stabilized(const std::vector<std::pair<double, double>>& trace, double rel_tol);

}  // namespace eberlein
