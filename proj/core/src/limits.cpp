#include "funspace/limits.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "funspace/error.hpp"

namespace funspace {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) fail(ErrorKind::InvalidArgument, "fit_line: need >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidArgument, "fit_line: abscissae are all equal");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return out;
}

std::string to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::TendsToZero: return "tends_to_zero";
    case LimitVerdict::Diverges: return "diverges";
    case LimitVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

LimitAssessment assess_limit(const std::vector<double>& deltas, const std::vector<double>& values,
                             const VerdictThresholds& th) {
  if (deltas.size() != values.size() || deltas.size() < 2)
    fail(ErrorKind::InvalidArgument, "assess_limit: need >= 2 paired probes");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1])) fail(ErrorKind::InvalidSequence, "assess_limit: probes must decrease");

  LimitAssessment out;
  const std::size_t n = values.size();
  const std::size_t tail = n / 2;
  out.final_value = values.back();

  out.eventually_decreasing = out.eventually_increasing = true;
  for (std::size_t i = tail + 1; i < n; ++i) {
    if (values[i] > values[i - 1] * (1 + 1e-12)) out.eventually_decreasing = false;
    if (values[i] < values[i - 1] * (1 - 1e-12)) out.eventually_increasing = false;
  }

  std::ostringstream os;
  if (out.final_value == 0.0 && out.eventually_decreasing) {
    out.verdict = LimitVerdict::TendsToZero;
    out.rationale = "values reach exactly 0";
    return out;
  }
  if (std::isinf(out.final_value)) {
    out.verdict = LimitVerdict::Diverges;
    out.rationale = "value is infinite";
    return out;
  }

  std::vector<double> lx, ly;
  for (std::size_t i = tail; i < n; ++i)
    if (values[i] > 0.0) {
      lx.push_back(std::log(deltas[i]));
      ly.push_back(std::log(values[i]));
    }
  if (lx.size() >= 2) out.slope = fit_line(lx, ly).slope;

  if (out.eventually_decreasing && out.final_value < th.zero_value && out.slope > th.zero_slope) {
    out.verdict = LimitVerdict::TendsToZero;
    os << "eventually decreasing, final " << out.final_value << " < " << th.zero_value << ", slope " << out.slope;
  } else if ((out.eventually_increasing && out.final_value > th.diverge_value) || out.slope < th.diverge_slope) {
    out.verdict = LimitVerdict::Diverges;
    os << "growing: final " << out.final_value << ", slope " << out.slope;
  } else {
    out.verdict = LimitVerdict::Inconclusive;
    os << "borderline: final " << out.final_value << ", slope " << out.slope;
  }
  out.rationale = os.str();
  return out;
}

PowerLogFit fit_power_log(const std::vector<double>& deltas, const std::vector<double>& values,
                          const std::function<double(double)>& log_factor) {
  if (deltas.size() != values.size() || deltas.size() < 4)
    fail(ErrorKind::InvalidArgument, "fit_power_log: need >= 4 paired points");
  std::array<std::array<double, 4>, 3> m{};  // normal equations, augmented
  std::vector<std::array<double, 3>> rows;
  std::vector<double> ys;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    rows.push_back({1.0, std::log(deltas[i]), std::log(log_factor(deltas[i]))});
    ys.push_back(std::log(values[i]));
  }
  if (rows.size() < 4) fail(ErrorKind::InvalidArgument, "fit_power_log: fewer than 4 positive values");
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += rows[k][i] * rows[k][j];
      m[i][3] += rows[k][i] * ys[k];
    }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    if (m[c][c] == 0.0) fail(ErrorKind::InvalidArgument, "fit_power_log: singular design");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int j = c; j < 4; ++j) m[r][j] -= f * m[c][j];
    }
  }
  PowerLogFit out;
  out.c0 = m[0][3] / m[0][0];
  out.c1 = m[1][3] / m[1][1];
  out.c2 = m[2][3] / m[2][2];
  double ss = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double r = ys[k] - (out.c0 + out.c1 * rows[k][1] + out.c2 * rows[k][2]);
    ss += r * r;
  }
  out.rms = std::sqrt(ss / static_cast<double>(rows.size()));
  return out;
}

}  // namespace funspace
