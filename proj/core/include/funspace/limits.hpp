#pragma once

// Finite-probe limit classification. A limit cannot be decided from finitely
// many samples, so verdicts follow explicit, configurable thresholds and
// "inconclusive" is a first-class outcome.

#include <functional>
#include <string>
#include <vector>

namespace funspace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope * x (needs >= 2 points).
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

enum class LimitVerdict { TendsToZero, Diverges, Inconclusive };

std::string to_string(LimitVerdict v);

struct VerdictThresholds {
  double zero_value = 1e-3;      // final value must fall below this
  double zero_slope = 0.1;       // log value vs log delta slope above this
  double diverge_value = 1e3;    // increasing past this counts as divergence
  double diverge_slope = -0.1;   // or slope below this
};

struct LimitAssessment {
  LimitVerdict verdict = LimitVerdict::Inconclusive;
  double slope = 0.0;       // fitted log-log slope over the tail half
  double final_value = 0.0;
  bool eventually_decreasing = false;
  bool eventually_increasing = false;
  std::string rationale;
};

/// Classifies lim_{delta -> 0+} v(delta) from probes ordered by decreasing delta.
LimitAssessment assess_limit(const std::vector<double>& deltas, const std::vector<double>& values,
                             const VerdictThresholds& th = {});

struct PowerLogFit {
  double c0 = 0.0;  // log-constant
  double c1 = 0.0;  // exponent of delta
  double c2 = 0.0;  // exponent of the log factor
  double rms = 0.0;
};

/// Least squares log g = c0 + c1 log delta + c2 log L(delta).
PowerLogFit fit_power_log(const std::vector<double>& deltas, const std::vector<double>& values,
                          const std::function<double(double)>& log_factor);

}  // namespace funspace
