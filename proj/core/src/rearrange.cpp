#include "funspace/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <cstdio>
#include <limits>

#include "funspace/error.hpp"

namespace funspace {

DecreasingProfile::DecreasingProfile(std::vector<double> breakpoints, std::vector<double> levels,
                                     double domain_length)
    : domain_length_(domain_length) {
  if (!(domain_length > 0.0) || !std::isfinite(domain_length))
    fail(ErrorKind::InvalidArgument, "profile: domain length must be positive and finite");
  if (breakpoints.size() != levels.size() || breakpoints.empty())
    fail(ErrorKind::InvalidArgument, "profile: need one level per breakpoint");
  if (breakpoints.back() != domain_length)
    fail(ErrorKind::InvalidArgument, "profile: last breakpoint must equal the domain length");
  double prev_t = 0.0;
  double prev_level = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(breakpoints[i] > prev_t))
      fail(ErrorKind::InvalidArgument, "profile: breakpoints must be strictly increasing in (0, T]");
    if (!(levels[i] >= 0.0) || !std::isfinite(levels[i]) || levels[i] > prev_level)
      fail(ErrorKind::InvalidArgument, "profile: levels must be finite, non-negative and non-increasing");
    if (!levels_.empty() && levels[i] == levels_.back()) {
      breakpoints_.back() = breakpoints[i];
    } else {
      breakpoints_.push_back(breakpoints[i]);
      levels_.push_back(levels[i]);
    }
    prev_t = breakpoints[i];
    prev_level = levels[i];
  }
}

ProfileSegment DecreasingProfile::segment(std::size_t i) const {
  return {i == 0 ? 0.0 : breakpoints_[i - 1], breakpoints_[i], levels_[i]};
}

double DecreasingProfile::operator()(double t) const {
  if (t < 0.0 || std::isnan(t)) fail(ErrorKind::DomainError, "profile: t must be non-negative");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double DecreasingProfile::integral_to(double t) const {
  t = std::min(t, domain_length_);
  double sum = 0.0;
  double start = 0.0;
  for (std::size_t i = 0; i < levels_.size() && start < t; ++i) {
    const double end = std::min(breakpoints_[i], t);
    sum += levels_[i] * (end - start);
    start = breakpoints_[i];
  }
  return sum;
}

double DecreasingProfile::distribution(double lambda) const {
  if (lambda < 0.0 || std::isnan(lambda)) fail(ErrorKind::InvalidThreshold, "distribution: lambda must be >= 0");
  double m = 0.0;
  for (std::size_t i = 0; i < levels_.size() && levels_[i] > lambda; ++i) m = breakpoints_[i];
  return m;
}

DecreasingProfile DecreasingProfile::scaled(double c) const {
  const double a = std::fabs(c);
  if (a == 0.0) return DecreasingProfile({domain_length_}, {0.0}, domain_length_);
  std::vector<double> lv(levels_);
  for (auto& v : lv) v *= a;
  return DecreasingProfile(breakpoints_, std::move(lv), domain_length_);
}

DecreasingProfile rearrangement(const SampledFunction& f) {
  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::fabs(f[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());

  const double cm = f.cell_measure();
  const double total = f.box().volume();
  std::vector<double> bps, lvs;
  for (std::size_t i = 0; i < mags.size();) {
    std::size_t j = i;
    while (j < mags.size() && mags[j] == mags[i]) ++j;
    // breakpoints are count * cell_measure (never accumulated) so that
    // distribution counting reproduces them bit-for-bit
    bps.push_back(j == mags.size() ? total : static_cast<double>(j) * cm);
    lvs.push_back(mags[i]);
    i = j;
  }
  return DecreasingProfile(std::move(bps), std::move(lvs), total);
}

double distribution(const SampledFunction& f, double lambda) {
  if (lambda < 0.0 || std::isnan(lambda)) fail(ErrorKind::InvalidThreshold, "distribution: lambda must be >= 0");
  std::size_t count = 0;
  for (double v : f.values())
    if (std::fabs(v) > lambda) ++count;
  return count == f.size() ? f.box().volume() : static_cast<double>(count) * f.cell_measure();
}

double maximal(const DecreasingProfile& profile, double t) {
  if (!(t > 0.0) || !(t < profile.domain_length()))
    fail(ErrorKind::DomainError, "maximal: t must lie in (0, T)");
  return profile.integral_to(t) / t;
}

void write_profile_csv(std::ostream& os, const DecreasingProfile& profile) {
  char buf[96];
  os << "t_break,level\n";
  for (std::size_t i = 0; i < profile.segment_count(); ++i) {
    const auto s = profile.segment(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.start, s.level);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g,0\n", profile.domain_length());
  os << buf;
}

}  // namespace funspace
