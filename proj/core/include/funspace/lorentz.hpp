#pragma once

// Weighted Lorentz functionals on (0, T), T = |Omega|:
//
//   B_{p,q;w}(t)   = || tau^{1/p-1/q} w(tau) ||_{q;(0,t)}
//   ||f||_{p,q;w}  = || t^{1/p-1/q} w(t) f*(t) ||_{q;(0,T)}
//
// f* is an exact step function, so each segment contributes level^q times a
// one-dimensional power-log integral (closed form or log-substituted
// Gauss-Kronrod). For q = inf the supremum is taken segment by segment.

#include <cstdint>
#include <string>
#include <vector>

#include "funspace/measure.hpp"
#include "funspace/param.hpp"
#include "funspace/rearrange.hpp"
#include "funspace/weight.hpp"

namespace funspace {

/// Raw parameter bundle; only p, q > 0 and T > 0 are checked.
struct LorentzParams {
  Param p;
  Param q;
  Weight weight;
  double omega_measure;

  LorentzParams(Param p, Param q, Weight weight, double omega_measure);
  Param inv_p() const { return p.reciprocal(); }
};

/// Validated (p, q, w, Omega): B_{p,q;w} finite on (0, T] and B in Delta_2, so
/// the Lorentz functional is a quasi-norm.
class LorentzSpec {
 public:
  /// Power-log weights are re-anchored to domain end T. Throws Divergent if
  /// B_{p,q;w} is infinite and InvalidArgument if Delta_2 fails.
  explicit LorentzSpec(LorentzParams params);
  LorentzSpec(Param p, Param q, Weight weight, double omega_measure)
      : LorentzSpec(LorentzParams(std::move(p), std::move(q), std::move(weight), omega_measure)) {}

  /// L_{p,q} with w == 1.
  static LorentzSpec unweighted(Param p, Param q, double omega_measure);
  /// L_p = L_{p,p}.
  static LorentzSpec lebesgue(Param p, double omega_measure) { return unweighted(p, p, omega_measure); }

  const LorentzParams& params() const noexcept { return params_; }
  const Param& p() const noexcept { return params_.p; }
  const Param& q() const noexcept { return params_.q; }
  const Weight& weight() const noexcept { return params_.weight; }
  double omega_measure() const noexcept { return params_.omega_measure; }

  std::string describe() const;

 private:
  LorentzParams params_;
};

/// B_{p,q;w}(t) for t in (0, T]; value = +inf when the integral diverges.
Evaluated big_B(const LorentzParams& params, double t);
inline Evaluated big_B(const LorentzSpec& spec, double t) { return big_B(spec.params(), t); }

Evaluated lorentz_quasinorm(const LorentzSpec& spec, const DecreasingProfile& profile);
Evaluated lorentz_quasinorm(const LorentzSpec& spec, const SampledFunction& f);

/// || t^{1/p-1/q} w(t) f*(t) ||_{q;(0,delta)}: the functional restricted to the
/// largest values of f.
Evaluated truncated_quasinorm(const LorentzSpec& spec, const DecreasingProfile& profile, double delta);

struct Delta2Result {
  bool holds = false;
  double bound = 0.0;               // sup_{t <= T/2} B(2t)/B(t) when holds
  std::vector<double> probe_t;      // dyadic probes
  std::vector<double> ratios;       // B(2t)/B(t) at probe_t
  std::vector<double> witness_t;    // probes where the ratio keeps growing (on failure)
  Method method = Method::ClosedForm;
  std::string rationale;
};

/// Delta_2 decision. Power-log weights: decided from the exponents (every
/// power-log weight satisfies w(2t) <~ w(t), so Delta_2 holds whenever B is
/// finite). Tabulated weights: dyadic ratio test, reported as empirical.
Delta2Result delta2_classify(const LorentzParams& params);

/// Dyadic ratio test B(2^{1-k}) / B(2^{-k}) for k with 2^{-k} <= T/2, k <= kmax.
/// Fails when the ratio sequence keeps growing: the maximum over the finer half
/// of the probes exceeds twice the maximum over the coarser half.
Delta2Result delta2_numeric(const LorentzParams& params, int kmax = 40);

struct QuasiNormConstants {
  double C = 1.0;       // lower bound for the quasi-triangle constant
  double lambda = 1.0;  // (2C)^lambda = 2
  int trials = 0;
};

QuasiNormConstants constants_from_C(double C);

/// Empirical lower bound for C: max of ||f+g|| / (||f|| + ||g||) over random
/// pairs (indicators and step functions on a uniform grid of (0, T)).
QuasiNormConstants estimate_quasi_constants(const LorentzSpec& spec, int trials, std::uint64_t seed,
                                            std::size_t cells = 64);

/// L_{p/b, q/b; w^b}, the space whose quasi-norm is the b-power transform.
LorentzSpec power_transformed_spec(const LorentzSpec& spec, const Param& b);

/// sigma(f) = (|| |f|^{1/b} ||)^b.
Evaluated power_transform_norm(const LorentzSpec& spec, const Param& b, const DecreasingProfile& profile);
Evaluated power_transform_norm(const LorentzSpec& spec, const Param& b, const SampledFunction& f);

struct BConvexityResult {
  bool violated = false;
  double c_emp = 1.0;
  std::vector<std::size_t> sizes;        // distinct tuple sizes m
  std::vector<double> max_ratio;         // max ratio per m
  double growth_slope = 0.0;             // slope of log max_ratio against log m
  std::size_t witness = 0;               // tuple index attaining the max at the largest m
};

/// Empirical b-convexity: ratios || (sum |g_i|^b)^{1/b} || / (sum ||g_i||^b)^{1/b}.
/// Only an unbounded trend in m is reported as a violation.
BConvexityResult b_convexity_test(const LorentzSpec& spec, const Param& b,
                                  const std::vector<std::vector<SampledFunction>>& tuples,
                                  double slope_threshold = 0.2);

struct MinkowskiResult {
  bool holds = false;
  double lhs = 0.0;  // || int f(., y) dy ||_p
  double rhs = 0.0;  // int || f(., y) ||_p dy
  double gap = 0.0;  // lhs - rhs
};

/// Minkowski-type inequality on a two-variable grid function (axis 0 = x,
/// axis 1 = y) for L = L_p, p >= 1. Throws NotApplicable for p < 1.
MinkowskiResult minkowski_property_check(const SampledFunction& f2d, double p);

}  // namespace funspace
