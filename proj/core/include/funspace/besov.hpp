#pragma once

// First differences, moduli of continuity and Besov quasi-norms
//
//   ||f||_{B^s_{p,q}} = ||f||_p + || t^{-s-1/q} omega_{L_p}(f, t) ||_{q;(0,1)},
//   omega_L(f, t)     = sup_{|h| <= t} || f(. + h) - f ||_L,
//
// together with the structured function families used as test vehicles.
// Functions are extended by zero outside their box and shifts are restricted
// to the cell lattice, so every modulus is a lower bound of the continuous one
// with a gap of at most one lattice step in t.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "funspace/measure.hpp"
#include "funspace/param.hpp"

namespace funspace {

class BesovSpec {
 public:
  /// Requires 0 < s < 1, p, q in (0, inf], n >= 1.
  BesovSpec(Param s, Param p, Param q, int n);

  const Param& s() const noexcept { return s_; }
  const Param& p() const noexcept { return p_; }
  const Param& q() const noexcept { return q_; }
  int n() const noexcept { return n_; }

  std::string describe() const;

 private:
  Param s_, p_, q_;
  int n_;
};

/// Delta_h f = f(. + h) - f on f's box, with f = 0 outside the box. Every
/// component of h must be an integer multiple of the cell width.
SampledFunction difference(const SampledFunction& f, const std::vector<double>& h);
SampledFunction difference_cells(const SampledFunction& f, const std::vector<long>& shift);

using NormFn = std::function<double(const SampledFunction&)>;

/// omega(t) on the shift lattice: radii[i] = |h_i| sorted ascending and
/// values[i] = max of ||Delta_h f|| over all lattice h with |h| <= radii[i].
struct ModulusTable {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<std::vector<long>> argmax;  // lattice shift attaining values[i]
  double lattice_spacing = 0.0;           // smallest cell width

  /// omega(t): the running max at the largest radius <= t (0 below one cell).
  double at(double t) const;
};

/// Generic route: materializes Delta_h f on the box and applies `norm`.
ModulusTable modulus_table(const SampledFunction& f, const NormFn& norm, double t_max);

/// L_p route over the whole zero-extended space, touching only the support of
/// f for every shift. p in (0, inf].
ModulusTable modulus_table_lp(const SampledFunction& f, double p, double t_max);

double modulus(const SampledFunction& f, const NormFn& norm, double t);

struct BesovReport {
  double value = 0.0;
  double lp_part = 0.0;
  double seminorm_part = 0.0;
  int J = 0;                         // probes t_j = 2^{-j/4}, j = 0..J
  std::vector<double> probe_t;
  std::vector<double> probe_omega;
  bool boundary_warning = false;     // f is non-zero on a boundary cell
};

/// ||f||_p + ||t^{-s-1/q} omega(f, t)||_{q;(0,1)} with omega taken at the
/// probes t_j = 2^{-j/4} down to about two cells. For q < inf, omega is held at
/// its lower probe value on [t_{j+1}, t_j) and the weight is integrated exactly;
/// for q = inf the supremum is taken over the probes.
BesovReport besov_quasinorm(const SampledFunction& f, const BesovSpec& spec);

struct YAssumptionResult {
  bool satisfied = false;          // ||chi_(T,1)||_Y -> inf as T -> 0+
  std::vector<double> probe_T;
  std::vector<double> values;      // ||chi_(T,1)||_Y
  std::string rationale;
};

/// ||g||_Y = ||t^{-s-1/q} g(t)||_{q;(0,1)}; takes raw (s, q) so that s = 0 can
/// be examined. s in [0, 1), q in (0, inf].
YAssumptionResult y_assumption_check(double s, const Param& q, const std::vector<double>& probe_T);

/// Piecewise-linear radial cutoff: 1 on `inner`, 0 at distance >= margin from it.
SampledFunction lipschitz_cutoff(const SampledFunction& grid, const Box& inner, double margin);

// ---------------------------------------------------------------------------
// Function families

enum class FamilyKind { TranslatedBump, ConcentratingSpike, TensorHat, IndicatorUnion, RandomStep };

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

struct FamilySpec {
  FamilyKind kind = FamilyKind::ConcentratingSpike;
  std::map<std::string, double> params;

  double get(const std::string& key, double fallback) const;
};

struct FunctionFamily {
  FamilySpec spec;
  std::vector<SampledFunction> members;
  std::vector<double> labels;  // k for spikes, shift for bumps, index otherwise
};

/// Parameters (defaults in parentheses):
///   TranslatedBump      count(4) width(0.5) spacing(1) height(1) start(lower + width)
///   ConcentratingSpike  k_min(1) k_max(8) p(1) origin(0) layout(0 nested, 1 disjoint)
///                       member k = k^{1/p} chi_[o, o + 1/k) with the width rounded to
///                       whole cells and the height fixed so that ||.||_p = 1
///   TensorHat           count(4) width(0.5) height(1)
///   IndicatorUnion      count(4) pieces(3) seed(1)
///   RandomStep          count(4) blocks(8) seed(1)
/// Throws ResolutionError when a spike is narrower than one cell.
FunctionFamily make_family(const FamilySpec& spec, const Box& box, const std::vector<std::size_t>& cells);

/// Random tent functions supported in `support`, each scaled to Besov quasi-norm 1.
FunctionFamily besov_ball_sample(const BesovSpec& spec, const Box& box, const std::vector<std::size_t>& cells,
                                 const Box& support, std::size_t count, std::uint64_t seed);

}  // namespace funspace
