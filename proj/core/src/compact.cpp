#include "funspace/compact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "funspace/error.hpp"
#include "funspace/parallel.hpp"
#include "funspace/quadrature.hpp"
#include "funspace/rearrange.hpp"

namespace funspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_decreasing(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) fail(ErrorKind::InvalidSequence, std::string(what) + ": probes must be positive");
    if (i > 0 && !(xs[i] < xs[i - 1])) fail(ErrorKind::InvalidSequence, std::string(what) + ": probes must decrease");
  }
}

double norm_of(const LorentzSpec& spec, const SampledFunction& f) { return lorentz_quasinorm(spec, f).value; }

}  // namespace

std::string to_string(UacVerdict v) {
  switch (v) {
    case UacVerdict::UAC: return "UAC";
    case UacVerdict::NotUAC: return "NotUAC";
    case UacVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(AcVerdict v) {
  switch (v) {
    case AcVerdict::AC: return "AC";
    case AcVerdict::NotAC: return "NotAC";
    case AcVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

UacReport uac_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                    const std::vector<double>& deltas, const VerdictThresholds& th, std::string family_id) {
  if (deltas.size() < 2) fail(ErrorKind::InvalidSequence, "uac_check: need at least 2 probes");
  require_decreasing(deltas, "uac_check");
  for (const auto& u : family)
    if (deltas.back() < u.cell_measure() * (1 - 1e-12)) {
      std::ostringstream os;
      os << "uac_check: delta = " << deltas.back() << " is below the cell measure " << u.cell_measure();
      fail(ErrorKind::ResolutionError, os.str());
    }

  UacReport r;
  r.family_id = std::move(family_id);
  r.delta_probes = deltas;
  r.sup_tail_norms.assign(deltas.size(), 0.0);
  r.argmax.assign(deltas.size(), 0);
  if (family.empty()) {
    r.verdict = UacVerdict::UAC;
    r.assessment.verdict = LimitVerdict::TendsToZero;
    r.assessment.rationale = "empty family";
    return r;
  }
  std::vector<std::vector<double>> tails(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const auto profile = rearrangement(family[i]);
    tails[i].resize(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) tails[i][k] = truncated_quasinorm(spec, profile, deltas[k]).value;
  });
  for (std::size_t k = 0; k < deltas.size(); ++k)
    for (std::size_t i = 0; i < family.size(); ++i)
      if (tails[i][k] > r.sup_tail_norms[k]) {
        r.sup_tail_norms[k] = tails[i][k];
        r.argmax[k] = i;
      }

  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < deltas.size(); ++k)
    if (r.sup_tail_norms[k] > 0) {
      lx.push_back(std::log(deltas[k]));
      ly.push_back(std::log(r.sup_tail_norms[k]));
    }
  if (lx.size() >= 2) r.decay_exponent = fit_line(lx, ly).slope;

  r.assessment = assess_limit(deltas, r.sup_tail_norms, th);
  const double floor_value = *std::min_element(r.sup_tail_norms.begin(), r.sup_tail_norms.end());
  if (r.assessment.verdict == LimitVerdict::TendsToZero) {
    r.verdict = UacVerdict::UAC;
  } else if (floor_value >= th.zero_value &&
             (r.assessment.verdict == LimitVerdict::Diverges || std::fabs(r.assessment.slope) <= th.zero_slope)) {
    r.verdict = UacVerdict::NotUAC;
    r.witness = r.argmax.back();
    r.witness_value = floor_value;
  }
  return r;
}

AcReport ac_single_check(const SampledFunction& f, const LorentzSpec& spec, const MeasurableSetSeq& shrinking,
                         const VerdictThresholds& th) {
  if (shrinking.cell_count() != f.size()) fail(ErrorKind::InvalidSet, "ac_single_check: sets belong to another grid");
  if (shrinking.size() < 2) fail(ErrorKind::InvalidSequence, "ac_single_check: need at least 2 sets");
  if (!shrinking.is_nested()) fail(ErrorKind::InvalidSequence, "ac_single_check: sets are not nested");
  AcReport r;
  r.measures = shrinking.measures(f);
  if (!(r.measures.back() < r.measures.front()) || r.measures.back() > f.cell_measure() * (1 + 1e-12))
    fail(ErrorKind::InvalidSequence, "ac_single_check: sets do not shrink to a null set (final measure above one cell)");
  for (const auto& set : shrinking.sets()) r.values.push_back(norm_of(spec, mask(f, set)));

  if (r.values.back() == 0.0) {
    r.verdict = AcVerdict::AC;
    r.rationale = "||f chi_E|| reaches 0 on the final set";
    return r;
  }
  std::vector<double> ms, vs;
  for (std::size_t i = 0; i < r.measures.size(); ++i)
    if (ms.empty() || r.measures[i] < ms.back()) {
      ms.push_back(r.measures[i]);
      vs.push_back(r.values[i]);
    }
  if (ms.size() < 2) {
    r.rationale = "too few distinct measures";
    return r;
  }
  const auto a = assess_limit(ms, vs, th);
  r.verdict = a.verdict == LimitVerdict::TendsToZero ? AcVerdict::AC
              : a.verdict == LimitVerdict::Diverges  ? AcVerdict::NotAC
                                                     : AcVerdict::Inconclusive;
  r.rationale = a.rationale;
  return r;
}

ConditionResult tail_condition_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                     const Box& G, double epsilon) {
  ConditionResult r;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& u = family[i];
    const double v = norm_of(spec, mask(u, complement(u, cells_inside(u, G))));
    if (v > r.value || !r.witness) {
      r.value = std::max(r.value, v);
      r.witness = i;
    }
  }
  r.pass = r.value < epsilon;
  if (r.pass) r.witness.reset();
  return r;
}

ConditionResult equicontinuity_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                     double delta, double epsilon) {
  ConditionResult r;
  const NormFn norm = [&spec](const SampledFunction& g) { return norm_of(spec, g); };
  std::vector<double> best_shift;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& u = family[i];
    double cell = kInf;
    for (std::size_t a = 0; a < u.dim(); ++a) cell = std::min(cell, u.cell_width(a));
    if (!(delta > cell * (1 + 1e-12))) {
      std::ostringstream os;
      os << "equicontinuity_check: delta = " << delta << " admits no lattice shift (cell " << cell << ")";
      fail(ErrorKind::ResolutionError, os.str());
    }
    const auto table = modulus_table(u, norm, delta);
    // strict |h| < delta
    std::size_t idx = table.radii.size();
    while (idx > 0 && table.radii[idx - 1] >= delta * (1 - 1e-12)) --idx;
    if (idx == 0) continue;
    const double v = table.values[idx - 1];
    if (v > r.value || !r.witness) {
      r.value = std::max(r.value, v);
      r.witness = i;
      best_shift.clear();
      for (std::size_t a = 0; a < u.dim(); ++a) best_shift.push_back(table.argmax[idx - 1][a] * u.cell_width(a));
    }
  }
  r.pass = r.value < epsilon;
  if (r.pass) {
    r.witness.reset();
  } else {
    r.witness_shift = best_shift;
  }
  return r;
}

ConditionResult boundedness_check(const std::vector<SampledFunction>& family, const LorentzSpec& spec, double bound) {
  ConditionResult r;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double v = norm_of(spec, family[i]);
    if (v > r.value || !r.witness) {
      r.value = std::max(r.value, v);
      r.witness = i;
    }
  }
  r.pass = r.value <= bound;
  if (r.pass) r.witness.reset();
  return r;
}

CoveringResult covering_estimate(const std::vector<SampledFunction>& family, const LorentzSpec& spec,
                                 double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "covering_estimate: epsilon must be positive");
  CoveringResult r;
  if (family.empty()) return r;
  std::vector<double> dist(family.size(), kInf);
  std::size_t next = 0;
  while (true) {
    r.net_indices.push_back(next);
    const auto& center = family[next];
    parallel_for(family.size(), [&](std::size_t i) {
      if (dist[i] == 0.0) return;
      dist[i] = std::min(dist[i], i == next ? 0.0 : norm_of(spec, family[i] - center));
    });
    const auto it = std::max_element(dist.begin(), dist.end());
    r.covering_radius = *it;
    if (*it < epsilon) break;
    next = static_cast<std::size_t>(it - dist.begin());
  }
  r.net_size = r.net_indices.size();
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(EmbeddingCase c) {
  switch (c) {
    case EmbeddingCase::I: return "I";
    case EmbeddingCase::II: return "II";
    case EmbeddingCase::III: return "III";
  }
  return "?";
}

std::string to_string(EmbeddingOutcome v) {
  switch (v) {
    case EmbeddingOutcome::Compact: return "Compact";
    case EmbeddingOutcome::CriterionFails: return "CriterionFails";
    case EmbeddingOutcome::RefinementCompact: return "RefinementCompact";
    case EmbeddingOutcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

EmbeddingCase embedding_case(const BesovSpec& src, bool* flagged) {
  const Param n_over_p = Param::exact(src.n()) * src.p().reciprocal();
  const auto c = compare(src.s(), n_over_p);
  bool flag = c.flagged;
  EmbeddingCase out;
  if (c.sign < 0) {
    out = EmbeddingCase::I;
  } else if (c.sign == 0) {
    const auto cq = compare(src.q(), Param::exact(1));
    flag = flag || cq.flagged;
    out = cq.sign > 0 ? EmbeddingCase::II : EmbeddingCase::III;
  } else {
    out = EmbeddingCase::III;
  }
  if (flagged) *flagged = flag;
  return out;
}

double EnvelopeFunction::operator()(double t) const {
  if (!(t > 0.0)) fail(ErrorKind::DomainError, "envelope: t must be positive");
  return std::pow(t, power.value()) * std::pow(1.0 + std::log(log_reference / t), log_power.value());
}

std::string EnvelopeFunction::describe() const {
  switch (case_tag) {
    case EmbeddingCase::I: return "t^(" + power.to_string() + ")";
    case EmbeddingCase::II: return "|log t|^(" + log_power.to_string() + ")";
    case EmbeddingCase::III: return "1";
  }
  return "?";
}

EnvelopeFunction envelope(const BesovSpec& src) {
  EnvelopeFunction e;
  e.case_tag = embedding_case(src);
  const Param inv_p = src.p().reciprocal();
  if (e.case_tag == EmbeddingCase::I) e.power = -inv_p + src.s() * Param::exact(Rational(1, src.n()));
  if (e.case_tag == EmbeddingCase::II) e.log_power = Param::exact(1) + -src.q().reciprocal();
  return e;
}

namespace {

// Is lim_{delta->0} ||t^{alpha - 1/u} L^beta||_{u;(0,delta)} = 0?  +1 yes, -1 no.
int limit_is_zero(const Param& alpha, const Param& beta, const Param& u, bool& flagged) {
  const auto sa = decide_sign(alpha);
  flagged = flagged || sa.flagged;
  if (sa.sign != 0) return sa.sign;
  if (u.is_infinite()) {
    const auto sb = decide_sign(beta);
    flagged = flagged || sb.flagged;
    return sb.sign < 0 ? 1 : -1;
  }
  const auto sb = compare(beta * u, Param::exact(-1));
  flagged = flagged || sb.flagged;
  return sb.sign < 0 ? 1 : -1;
}

}  // namespace

EmbeddingVerdict classify_embedding(const BesovSpec& src, const LorentzSpec& tgt, const ClassifyOptions& opt) {
  if (opt.k_max - opt.k_min < 3) fail(ErrorKind::InvalidArgument, "classify_embedding: need at least 4 probes");
  EmbeddingVerdict v;
  v.source = src.describe();
  v.target = tgt.describe();
  v.case_tag = embedding_case(src, &v.boundary_flagged);
  auto env = envelope(src);
  const Param inv_r = tgt.p().reciprocal();
  const Param inv_u = tgt.q().reciprocal();
  const bool u_inf = tgt.q().is_infinite();

  const auto* pl = std::get_if<PowerLogWeight>(&tgt.weight());
  v.empirical = pl == nullptr;
  if (pl) env.log_reference = pl->log_reference();
  const double t_ref = pl ? pl->log_reference() : std::max(1.0, tgt.omega_measure());
  if (!pl) env.log_reference = t_ref;

  std::ostringstream cert;
  cert << "case " << to_string(v.case_tag) << " (" << v.source << " -> " << v.target << "); envelope " << env.describe()
       << ". ";
  EmbeddingOutcome symbolic_main = EmbeddingOutcome::Inconclusive;
  if (pl) {
    v.alpha = inv_r + pl->power() + env.power;
    v.beta = pl->log_power() + env.log_power;
    const int zero = limit_is_zero(v.alpha, v.beta, tgt.q(), v.boundary_flagged);
    symbolic_main = zero > 0 ? EmbeddingOutcome::Compact : EmbeddingOutcome::CriterionFails;
    cert << "Integrand t^(alpha - 1/u) (1+log(T/t))^beta with alpha = " << v.alpha.to_string()
         << ", beta = " << v.beta.to_string() << ", u = " << tgt.q().to_string() << ": the (0,delta) norm "
         << (zero > 0 ? "tends to 0" : "does not tend to 0") << ". ";

    if (v.case_tag == EmbeddingCase::I && zero < 0) {
      const Param critical = src.p().reciprocal() + -(src.s() * Param::exact(Rational(1, src.n())));
      const auto same_r = compare(inv_r, critical);
      const auto q_le_u = compare(src.q(), tgt.q());
      const auto sa = decide_sign(pl->power());
      const auto sb = decide_sign(pl->log_power());
      const bool w_to_zero = sa.sign > 0 || (sa.sign == 0 && sb.sign < 0);
      v.refinement_applicable = same_r.sign == 0 && q_le_u.sign <= 0 && w_to_zero;
      if (v.refinement_applicable) cert << "Refinement: 1/r = 1/p - s/n, q <= u and w(t) -> 0, so the embedding is compact. ";
    }
  }
  v.symbolic_verdict = v.refinement_applicable ? EmbeddingOutcome::RefinementCompact : symbolic_main;

  // Numeric oracle: pointwise integrand built from the weight and the envelope.
  auto g = [&](double t) {
    return std::pow(t, inv_r.value() - inv_u.value()) * weight_value(tgt.weight(), t) * env(t);
  };
  std::vector<double> ds, gs;
  for (int k = opt.k_min; k <= opt.k_max; ++k) {
    const double d = std::ldexp(1.0, -k);
    ds.push_back(d);
    gs.push_back(g(d));
  }
  const auto fit = fit_power_log(ds, gs, [t_ref](double t) { return 1.0 + std::log(t_ref / t); });
  v.alpha_hat = fit.c1 + inv_u.value();
  v.beta_hat = fit.c2;
  EmbeddingOutcome numeric_main = EmbeddingOutcome::Inconclusive;
  if (std::fabs(v.alpha_hat) > opt.alpha_band)
    numeric_main = v.alpha_hat > 0 ? EmbeddingOutcome::Compact : EmbeddingOutcome::CriterionFails;
  v.numeric_verdict = numeric_main;

  // Evidence: truncated norms from dyadic blocks [2^{-j-1}, 2^{-j}].
  constexpr int kDeepest = 300;
  const double uv = tgt.q().value();
  std::vector<double> block(kDeepest + 1, 0.0);
  for (int j = opt.k_min; j <= kDeepest; ++j) {
    const double lo = std::log(std::ldexp(1.0, -j - 1)), hi = std::log(std::ldexp(1.0, -j));
    if (u_inf) {
      double m = 0.0;
      for (int i = 0; i <= 8; ++i) m = std::max(m, g(std::exp(lo + (hi - lo) * i / 8.0)));
      block[j] = m;
    } else {
      block[j] = quad::gauss_kronrod([&](double x) {
                   const double t = std::exp(x);
                   return std::pow(g(t), uv) * t;
                 }, lo, hi, {1e-300, 1e-10, 200}).value;
    }
  }
  double acc = 0.0;
  std::vector<double> suffix(kDeepest + 2, 0.0);
  for (int j = kDeepest; j >= opt.k_min; --j) {
    acc = u_inf ? std::max(acc, block[j]) : acc + block[j];
    suffix[j] = acc;
  }
  std::vector<double> pv;
  for (int k = opt.k_min; k <= opt.k_max; ++k) {
    const double val = u_inf ? suffix[k] : std::pow(suffix[k], 1.0 / uv);
    v.probes.push_back({std::ldexp(1.0, -k), val});
    pv.push_back(val);
  }
  v.probe_assessment = assess_limit(ds, pv, opt.thresholds);

  cert << "Pointwise fit: alpha_hat = " << v.alpha_hat << ", beta_hat = " << v.beta_hat << " (numeric "
       << to_string(numeric_main) << "). ";

  EmbeddingOutcome main_final;
  if (v.empirical) {
    main_final = numeric_main;
  } else if (numeric_main == symbolic_main) {
    main_final = symbolic_main;
  } else if (numeric_main == EmbeddingOutcome::Inconclusive && v.alpha.is_exact() && !v.boundary_flagged) {
    main_final = symbolic_main;
    cert << "alpha is exactly 0, so the exact rule decides. ";
  } else {
    main_final = EmbeddingOutcome::Inconclusive;
    cert << "Borderline: symbolic and numeric calls differ. ";
  }
  if (v.boundary_flagged) cert << "A floating parameter lies within 1e-12 of a case boundary. ";
  v.final_verdict = (main_final == EmbeddingOutcome::CriterionFails && v.refinement_applicable)
                        ? EmbeddingOutcome::RefinementCompact
                        : main_final;
  cert << "Verdict: " << to_string(v.final_verdict) << ".";
  v.certificate = cert.str();
  return v;
}

EnvelopeFit envelope_empirical(const BesovSpec& src, const Box& box, const std::vector<std::size_t>& cells,
                               const std::vector<double>& widths, const std::vector<double>& t_probes) {
  if (t_probes.size() < 4) fail(ErrorKind::InvalidArgument, "envelope_empirical: need at least 4 probes to fit");
  const auto c = embedding_case(src);
  if (c == EmbeddingCase::II) fail(ErrorKind::InvalidArgument, "envelope_empirical: fits power envelopes only (case I or III)");
  if (static_cast<int>(box.dim()) != src.n()) fail(ErrorKind::InvalidArgument, "envelope_empirical: dimension mismatch");
  const auto grid = SampledFunction::zeros(box, cells);
  const std::size_t n = grid.dim();

  EnvelopeFit out;
  out.expected_slope = c == EmbeddingCase::I ? envelope(src).power.value() : 0.0;
  std::vector<double> heights, measures;
  for (double eps : widths) {
    std::vector<std::size_t> start(n), len(n);
    double measure = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double w = grid.cell_width(a);
      len[a] = static_cast<std::size_t>(std::lround(eps / w));
      if (len[a] < 2) {
        std::ostringstream os;
        os << "envelope_empirical: width " << eps << " spans fewer than two cells of " << w;
        fail(ErrorKind::ResolutionError, os.str());
      }
      if (len[a] + 2 > cells[a]) fail(ErrorKind::InvalidArgument, "envelope_empirical: spike wider than the box");
      start[a] = (cells[a] - len[a]) / 2;
      measure *= static_cast<double>(len[a]) * w;
    }
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto m = grid.multi_index(i);
      bool in = true;
      for (std::size_t a = 0; a < n && in; ++a) in = m[a] >= start[a] && m[a] < start[a] + len[a];
      if (in) v[i] = 1.0;
    }
    out.widths.push_back(eps);
    out.besov_norms.push_back(0.0);
    heights.push_back(0.0);
    measures.push_back(measure);
    const auto f = grid.with_values(std::move(v));
    const double norm = besov_quasinorm(f, src).value;
    out.besov_norms.back() = norm;
    heights.back() = 1.0 / norm;
  }
  std::vector<double> lx, ly;
  for (double t : t_probes) {
    double sup = 0.0;
    for (std::size_t i = 0; i < heights.size(); ++i)
      if (measures[i] > t) sup = std::max(sup, heights[i]);
    if (sup == 0.0) fail(ErrorKind::InvalidArgument, "envelope_empirical: probe t exceeds every spike measure");
    out.t.push_back(t);
    out.sup_values.push_back(sup);
    lx.push_back(std::log(t));
    ly.push_back(std::log(sup));
  }
  const auto line = fit_line(lx, ly);
  out.slope = line.slope;
  out.constant = std::exp(line.intercept);
  return out;
}

}  // namespace funspace
