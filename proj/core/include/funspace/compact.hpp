#pragma once

// Compactness diagnostics: uniform absolute continuity of families, the
// three conditions of the Kolmogorov-Riesz type criterion (boundedness, tails,
// equicontinuity), greedy epsilon-nets, and the Besov -> Lorentz embedding
// classifier with its growth envelopes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "funspace/besov.hpp"
#include "funspace/limits.hpp"
#include "funspace/lorentz.hpp"
#include "funspace/measure.hpp"

namespace funspace {

enum class UacVerdict { UAC, NotUAC, Inconclusive };
std::string to_string(UacVerdict v);

struct UacReport {
  std::string family_id;
  std::vector<double> delta_probes;
  std::vector<double> sup_tail_norms;   // sup over the family of the (0, delta)-truncated norm
  std::vector<std::size_t> argmax;      // member attaining each sup
  UacVerdict verdict = UacVerdict::Inconclusive;
  double decay_exponent = 0.0;          // log-log slope over all positive probes
  std::optional<std::size_t> witness;   // member index on NotUAC
  double witness_value = 0.0;           // smallest sup over the probes on NotUAC
  LimitAssessment assessment;
};

/// lim_{delta -> 0+} sup_u ||t^{1/p-1/q} w u*||_{q;(0,delta)} = 0? Probes must
/// decrease strictly; each must be at least one cell measure of every member.
UacReport uac_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                    const std::vector<double>& deltas, const VerdictThresholds& th = {},
                    std::string family_id = "");

enum class AcVerdict { AC, NotAC, Inconclusive };
std::string to_string(AcVerdict v);

struct AcReport {
  AcVerdict verdict = AcVerdict::Inconclusive;
  std::vector<double> measures;  // |E_n|
  std::vector<double> values;    // ||f chi_{E_n}||
  std::string rationale;
};

/// ||f chi_{E_n}|| decreasing to 0 along a nested sequence shrinking to at
/// most one cell. Throws InvalidSequence otherwise.
AcReport ac_single_check(const SampledFunction& f, const LorentzSpec& spec, const MeasurableSetSeq& shrinking,
                         const VerdictThresholds& th = {});

struct ConditionResult {
  bool pass = false;
  double value = 0.0;                 // the supremum that was compared with epsilon
  std::optional<std::size_t> witness; // member index on failure
  std::vector<double> witness_shift;  // shift h on equicontinuity failure
};

/// sup_u ||u chi_{box \ G}|| < epsilon (cells whose centers lie outside G).
ConditionResult tail_condition_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                     const Box& G, double epsilon);

/// sup_u sup_{0 < |h| < delta} ||Delta_h u|| < epsilon over lattice shifts.
/// Throws ResolutionError when no lattice shift is shorter than delta.
ConditionResult equicontinuity_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                     double delta, double epsilon);

/// sup_u ||u|| (the boundedness condition).
ConditionResult boundedness_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                  double bound);

struct CoveringResult {
  std::size_t net_size = 0;
  std::vector<std::size_t> net_indices;  // in order of selection
  double covering_radius = 0.0;          // max distance to the net afterwards
};

/// Greedy farthest-point epsilon-net in the metric ||f - g|| of `spec`; an
/// upper bound on the covering number at scale epsilon.
CoveringResult covering_estimate(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                 double epsilon);

// ---------------------------------------------------------------------------
// Embedding classifier

enum class EmbeddingCase { I, II, III };
std::string to_string(EmbeddingCase c);

enum class EmbeddingOutcome { Compact, CriterionFails, RefinementCompact, Inconclusive };
std::string to_string(EmbeddingOutcome v);

/// I: s < n/p. II: s = n/p and q > 1. III: everything else.
EmbeddingCase embedding_case(const BesovSpec& src, bool* flagged = nullptr);

/// Growth envelope of the Besov unit ball: t^{-1/p+s/n}, (1+log(T/t))^{1/q'}
/// (equivalent to |log t|^{1/q'} near 0), or 1.
struct EnvelopeFunction {
  EmbeddingCase case_tag = EmbeddingCase::III;
  Param power = Param::exact(0);       // exponent of t
  Param log_power = Param::exact(0);   // exponent of the log factor
  double log_reference = 1.0;

  double operator()(double t) const;
  std::string describe() const;
};

EnvelopeFunction envelope(const BesovSpec& src);

struct ProbeRow {
  double delta;
  double value;
};

struct EmbeddingVerdict {
  EmbeddingCase case_tag = EmbeddingCase::III;
  std::string source;
  std::string target;
  Param alpha = Param::exact(0);   // effective power exponent
  Param beta = Param::exact(0);    // effective log exponent
  bool boundary_flagged = false;   // a floating parameter sits within 1e-12 of a boundary
  bool empirical = false;          // tabulated target weight: numeric verdict only
  EmbeddingOutcome symbolic_verdict = EmbeddingOutcome::Inconclusive;
  EmbeddingOutcome numeric_verdict = EmbeddingOutcome::Inconclusive;
  EmbeddingOutcome final_verdict = EmbeddingOutcome::Inconclusive;
  bool refinement_applicable = false;
  double alpha_hat = 0.0;          // exponents fitted from pointwise integrand values
  double beta_hat = 0.0;
  std::vector<ProbeRow> probes;    // truncated norms at delta = 2^{-k}
  LimitAssessment probe_assessment;
  std::string certificate;
};

struct ClassifyOptions {
  int k_min = 4;
  int k_max = 40;
  double alpha_band = 0.01;   // |alpha_hat| at or below this is inconclusive
  VerdictThresholds thresholds;
};

EmbeddingVerdict classify_embedding(const BesovSpec& src, const LorentzSpec& tgt, const ClassifyOptions& opt = {});

struct EnvelopeFit {
  std::vector<double> t;
  std::vector<double> sup_values;   // sup over the normalized family of f*(t)
  double slope = 0.0;
  double constant = 0.0;            // exp(intercept)
  double expected_slope = 0.0;      // -1/p + s/n in case I, 0 in case III
  std::vector<double> widths;
  std::vector<double> besov_norms;  // of the unnormalized spikes
};

/// Normalized spikes chi_{cube of side eps} / ||.||_B on `box`/`cells`, and the
/// log-log slope of sup f*(t) over `t_probes` (at least 4 points). Throws
/// ResolutionError if a width is below two cells and InvalidArgument in case II.
EnvelopeFit envelope_empirical(const BesovSpec& src, const Box& box, const std::vector<std::size_t>& cells,
                               const std::vector<double>& widths, const std::vector<double>& t_probes);

}  // namespace funspace
