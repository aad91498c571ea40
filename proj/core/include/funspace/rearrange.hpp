#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "funspace/measure.hpp"

namespace funspace {

struct ProfileSegment {
  double start;
  double end;
  double level;
};

/// Exact right-continuous non-increasing step function on [0, T).
///
/// Segment i covers [breakpoints[i-1], breakpoints[i]) with breakpoints[-1] = 0
/// and carries levels[i]. The last breakpoint equals T. Adjacent equal levels
/// are merged on construction.
class DecreasingProfile {
 public:
  DecreasingProfile(std::vector<double> breakpoints, std::vector<double> levels, double domain_length);

  double domain_length() const noexcept { return domain_length_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  std::size_t segment_count() const noexcept { return levels_.size(); }
  ProfileSegment segment(std::size_t i) const;

  /// f*(t); zero for t >= T. Throws DomainError for t < 0.
  double operator()(double t) const;

  /// Integral of f* over (0, t), exact; t is clamped to T.
  double integral_to(double t) const;

  /// Measure of {f* > lambda}, which equals the distribution function of f.
  double distribution(double lambda) const;

  double sup() const noexcept { return levels_.empty() ? 0.0 : levels_.front(); }
  bool is_zero() const noexcept { return sup() == 0.0; }

  /// (c f)* = |c| f*.
  DecreasingProfile scaled(double c) const;

  friend bool operator==(const DecreasingProfile&, const DecreasingProfile&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
  double domain_length_;
};

/// f*: |values| sorted descending, each held for one cell measure; ties merged.
DecreasingProfile rearrangement(const SampledFunction& f);

/// |{x : |f(x)| > lambda}|. Throws InvalidThreshold for lambda < 0.
double distribution(const SampledFunction& f, double lambda);

/// f**(t) = (1/t) * integral_0^t f*; requires t in (0, T).
double maximal(const DecreasingProfile& profile, double t);

/// CSV rows `t_break,level` (left endpoint of each segment), closed by `T,0`.
void write_profile_csv(std::ostream& os, const DecreasingProfile& profile);

}  // namespace funspace
