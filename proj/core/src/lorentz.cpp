#include "funspace/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "funspace/error.hpp"
#include "funspace/limits.hpp"

namespace funspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Weight anchored(const Weight& w, double t_end) {
  if (const auto* pl = std::get_if<PowerLogWeight>(&w)) return pl->with_domain_end(t_end);
  const auto& tw = std::get<TabulatedWeight>(w);
  return TabulatedWeight(tw.knots(), tw.values(), t_end);
}

std::string describe_weight(const Weight& w) {
  std::ostringstream os;
  if (const auto* pl = std::get_if<PowerLogWeight>(&w)) {
    os.precision(17);
    os << pl->scale() << "*t^" << pl->power().to_string() << "*(1+log(" << pl->log_reference()
       << "/t))^" << pl->log_power().to_string();
  } else {
    os << "tabulated(" << std::get<TabulatedWeight>(w).knots().size() << " knots)";
  }
  return os.str();
}

// Contribution of [t1, t2] to the functional: the q-th power integral for q < inf,
// the supremum of t^{1/p} w for q = inf.
Evaluated piece(const LorentzParams& params, double t1, double t2) {
  if (params.q.is_infinite()) return weight_sup(params.weight, params.inv_p(), t1, t2);
  return weight_integral(params.weight, params.inv_p(), params.q, t1, t2);
}

Evaluated profile_functional(const LorentzParams& params, const DecreasingProfile& profile, double upto) {
  const bool q_inf = params.q.is_infinite();
  const double qv = params.q.value();
  double acc = 0.0, err = 0.0;
  Method method = Method::ClosedForm;
  // levels are taken relative to the top one, so scaling f by a power of two
  // scales the result exactly
  const double top = profile.sup();
  if (top == 0.0) return {0.0, 0.0, method};
  for (std::size_t i = 0; i < profile.segment_count(); ++i) {
    const auto seg = profile.segment(i);
    if (seg.start >= upto) break;
    if (seg.level == 0.0) break;  // levels are non-increasing
    const double end = std::min(seg.end, upto);
    const auto r = piece(params, seg.start, end);
    if (r.method == Method::Quadrature) method = Method::Quadrature;
    if (q_inf) {
      acc = std::max(acc, seg.level * r.value);
    } else {
      const double lq = std::pow(seg.level / top, qv);
      acc += lq * r.value;
      err += lq * r.est_error;
    }
  }
  if (q_inf) return {acc, 0.0, method};
  if (acc == 0.0) return {0.0, 0.0, method};
  const double value = top * std::pow(acc, 1.0 / qv);
  return {value, std::isfinite(value) ? value * err / (qv * acc) : 0.0, method};
}

void check_profile_domain(const LorentzSpec& spec, const DecreasingProfile& profile) {
  const double T = spec.omega_measure();
  if (std::fabs(profile.domain_length() - T) > 1e-12 * std::max(1.0, T)) {
    std::ostringstream os;
    os << "profile domain length " << profile.domain_length() << " does not match |Omega| = " << T;
    fail(ErrorKind::DomainError, os.str());
  }
}

}  // namespace

LorentzParams::LorentzParams(Param p_, Param q_, Weight weight_, double omega_measure_)
    : p(std::move(p_)), q(std::move(q_)), weight(std::move(weight_)), omega_measure(omega_measure_) {
  if (!(p.value() > 0.0)) fail(ErrorKind::InvalidArgument, "Lorentz parameters: p must lie in (0, inf]");
  if (!(q.value() > 0.0)) fail(ErrorKind::InvalidArgument, "Lorentz parameters: q must lie in (0, inf]");
  if (!(omega_measure > 0.0) || !std::isfinite(omega_measure))
    fail(ErrorKind::InvalidArgument, "Lorentz parameters: |Omega| must be positive and finite");
  weight = anchored(weight, omega_measure);
}

LorentzSpec::LorentzSpec(LorentzParams params) : params_(std::move(params)) {
  if (!weight_origin_finite(params_.weight, params_.inv_p(), params_.q)) {
    std::ostringstream os;
    os << "B_{p,q;w} diverges at the origin (p=" << params_.p.to_string() << ", q=" << params_.q.to_string()
       << ", w=" << describe_weight(params_.weight) << ")";
    if (const auto* pl = std::get_if<PowerLogWeight>(&params_.weight)) {
      const Param alpha = params_.inv_p() + pl->power();
      os << ": exponent 1/p + a = " << alpha.to_string();
      if (decide_sign(alpha).sign == 0) os << " with log exponent b = " << pl->log_power().to_string();
      os << (params_.q.is_infinite() ? " (need 1/p + a > 0, or = 0 with b <= 0)"
                                      : " (need 1/p + a > 0, or = 0 with b*q < -1)");
    }
    fail(ErrorKind::Divergent, os.str());
  }
  if (is_tabulated(params_.weight)) {
    const auto d2 = delta2_numeric(params_);
    if (!d2.holds)
      fail(ErrorKind::InvalidArgument,
           "B_{p,q;w} violates Delta_2 (B(2t)/B(t) unbounded); the Lorentz functional is not a quasi-norm");
  }
}

LorentzSpec LorentzSpec::unweighted(Param p, Param q, double omega_measure) {
  return LorentzSpec(std::move(p), std::move(q), PowerLogWeight::unit(omega_measure), omega_measure);
}

std::string LorentzSpec::describe() const {
  std::ostringstream os;
  os << "L_{" << params_.p.to_string() << "," << params_.q.to_string() << ";w}, w = "
     << describe_weight(params_.weight) << ", |Omega| = " << params_.omega_measure;
  return os.str();
}

Evaluated big_B(const LorentzParams& params, double t) {
  const double T = params.omega_measure;
  if (!(t > 0.0) || t > T * (1.0 + 1e-15)) fail(ErrorKind::DomainError, "big_B: t must lie in (0, |Omega|]");
  t = std::min(t, T);
  if (!weight_origin_finite(params.weight, params.inv_p(), params.q)) return {kInf, 0.0, Method::ClosedForm};
  auto r = piece(params, 0.0, t);
  if (params.q.is_infinite() || !std::isfinite(r.value)) return r;
  const double qv = params.q.value();
  const double value = std::pow(r.value, 1.0 / qv);
  return {value, r.value > 0 ? value * r.est_error / (qv * r.value) : 0.0, r.method};
}

Evaluated lorentz_quasinorm(const LorentzSpec& spec, const DecreasingProfile& profile) {
  check_profile_domain(spec, profile);
  return profile_functional(spec.params(), profile, profile.domain_length());
}

Evaluated lorentz_quasinorm(const LorentzSpec& spec, const SampledFunction& f) {
  return lorentz_quasinorm(spec, rearrangement(f));
}

Evaluated truncated_quasinorm(const LorentzSpec& spec, const DecreasingProfile& profile, double delta) {
  check_profile_domain(spec, profile);
  if (!(delta > 0.0)) fail(ErrorKind::DomainError, "truncated_quasinorm: delta must be positive");
  return profile_functional(spec.params(), profile, std::min(delta, profile.domain_length()));
}

// ---------------------------------------------------------------------------

Delta2Result delta2_numeric(const LorentzParams& params, int kmax) {
  Delta2Result out;
  out.method = Method::Empirical;
  const double T = params.omega_measure;
  for (int k = 0; k <= kmax; ++k) {
    const double t = std::ldexp(1.0, -k);
    if (t > T / 2) continue;
    const double b1 = big_B(params, t).value;
    const double b2 = big_B(params, 2 * t).value;
    out.probe_t.push_back(t);
    out.ratios.push_back(std::isfinite(b1) && std::isfinite(b2) && b1 > 0 ? b2 / b1 : kInf);
  }
  const std::size_t n = out.ratios.size();
  if (n == 0) {
    out.holds = true;
    out.bound = 1.0;
    out.rationale = "no dyadic probe fits in (0, T/2]";
    return out;
  }
  for (double r : out.ratios)
    if (!std::isfinite(r)) {
      out.holds = false;
      out.rationale = "B is infinite at a probe";
      return out;
    }
  const std::size_t half = n / 2;
  double coarse = 0.0, fine = 0.0;
  for (std::size_t i = 0; i < n; ++i) (i < half ? coarse : fine) = std::max(i < half ? coarse : fine, out.ratios[i]);
  if (half > 0 && fine > 2.0 * coarse) {
    out.holds = false;
    for (std::size_t i = half; i < n; ++i)
      if (out.ratios[i] > 2.0 * coarse) out.witness_t.push_back(out.probe_t[i]);
    std::ostringstream os;
    os << "dyadic ratios keep growing: max " << fine << " on fine probes vs " << coarse << " on coarse probes";
    out.rationale = os.str();
    return out;
  }
  out.holds = true;
  out.bound = std::max(coarse, fine);
  out.rationale = "dyadic ratios B(2t)/B(t) stay bounded";
  return out;
}

Delta2Result delta2_classify(const LorentzParams& params) {
  if (is_tabulated(params.weight)) {
    auto r = delta2_numeric(params);
    r.rationale = "empirical (tabulated weight): " + r.rationale;
    return r;
  }
  const auto& w = std::get<PowerLogWeight>(params.weight);
  if (!w.origin_finite(params.inv_p(), params.q))
    fail(ErrorKind::Divergent, "delta2_classify: B_{p,q;w} is infinite, Delta_2 is undefined");

  Delta2Result out = delta2_numeric(params);  // evidence only
  out.method = Method::ClosedForm;
  out.holds = true;
  out.witness_t.clear();

  const Param alpha = params.inv_p() + w.power();
  const double limit = decide_sign(alpha).sign > 0 ? std::exp2(alpha.value()) : 1.0;
  double bound = limit;
  const double T = params.omega_measure;
  for (int j = 0; j <= 320; ++j) {
    const double t = (T / 2) * std::exp2(-j / 8.0);
    const double b1 = big_B(params, t).value;
    const double b2 = big_B(params, 2 * t).value;
    if (b1 > 0 && std::isfinite(b2)) bound = std::max(bound, b2 / b1);
  }
  out.bound = bound;
  std::ostringstream os;
  os << "power-log weight satisfies w(2t) <~ w(t) and B is finite (1/p + a = " << alpha.to_string()
     << "), hence B(2t) <~ B(t); limit ratio " << limit;
  out.rationale = os.str();
  return out;
}

// ---------------------------------------------------------------------------

QuasiNormConstants constants_from_C(double C) {
  if (!(C >= 1.0)) fail(ErrorKind::InvalidArgument, "quasi-triangle constant must be >= 1");
  return {C, std::log(2.0) / std::log(2.0 * C), 0};
}

QuasiNormConstants estimate_quasi_constants(const LorentzSpec& spec, int trials, std::uint64_t seed,
                                            std::size_t cells) {
  if (trials < 1) fail(ErrorKind::InvalidArgument, "estimate_quasi_constants: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Box box = Box::interval(0.0, spec.omega_measure());
  auto random_function = [&](bool indicator) {
    const double density = unif(rng);
    std::vector<double> v(cells, 0.0);
    for (auto& x : v)
      if (unif(rng) < density) x = indicator ? 1.0 : unif(rng);
    return SampledFunction(box, {cells}, std::move(v));
  };
  double worst = 1.0;
  for (int i = 0; i < trials; ++i) {
    const bool indicator = (i % 2) == 0;
    const auto f = random_function(indicator);
    const auto g = random_function(indicator);
    const double nf = lorentz_quasinorm(spec, f).value;
    const double ng = lorentz_quasinorm(spec, g).value;
    if (nf + ng == 0.0) continue;
    const double nfg = lorentz_quasinorm(spec, f + g).value;
    worst = std::max(worst, nfg / (nf + ng));
  }
  if (worst <= 1.0 + 1e-12) worst = 1.0;
  auto out = constants_from_C(worst);
  out.trials = trials;
  return out;
}

LorentzSpec power_transformed_spec(const LorentzSpec& spec, const Param& b) {
  if (!(b.value() > 0.0) || b.value() > 1.0) fail(ErrorKind::InvalidArgument, "power transform: b must lie in (0, 1]");
  const Param inv_b = b.reciprocal();
  auto scale = [&inv_b](const Param& x) { return x.is_infinite() ? x : x * inv_b; };
  return LorentzSpec(scale(spec.p()), scale(spec.q()), weight_powered(spec.weight(), b), spec.omega_measure());
}

Evaluated power_transform_norm(const LorentzSpec& spec, const Param& b, const DecreasingProfile& profile) {
  if (!(b.value() > 0.0) || b.value() > 1.0) fail(ErrorKind::InvalidArgument, "power transform: b must lie in (0, 1]");
  const double bv = b.value();
  std::vector<double> levels(profile.levels());
  for (auto& l : levels) l = std::pow(l, 1.0 / bv);
  const DecreasingProfile lifted(profile.breakpoints(), std::move(levels), profile.domain_length());
  auto r = lorentz_quasinorm(spec, lifted);
  const double value = std::pow(r.value, bv);
  return {value, r.value > 0 ? bv * value * r.est_error / r.value : 0.0, r.method};
}

Evaluated power_transform_norm(const LorentzSpec& spec, const Param& b, const SampledFunction& f) {
  return power_transform_norm(spec, b, rearrangement(f));
}

BConvexityResult b_convexity_test(const LorentzSpec& spec, const Param& b,
                                  const std::vector<std::vector<SampledFunction>>& tuples,
                                  double slope_threshold) {
  const double bv = b.value();
  if (!(bv > 0.0)) fail(ErrorKind::InvalidArgument, "b-convexity: b must be positive");
  BConvexityResult out;
  std::map<std::size_t, std::pair<double, std::size_t>> by_m;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& tuple = tuples[t];
    if (tuple.empty()) continue;
    double ratio = 1.0;
    if (tuple.size() > 1) {
      std::vector<double> combined(tuple.front().size(), 0.0);
      double rhs = 0.0;
      for (const auto& g : tuple) {
        require_same_grid(tuple.front(), g);
        for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += std::pow(std::fabs(g[i]), bv);
        rhs += std::pow(lorentz_quasinorm(spec, g).value, bv);
      }
      for (auto& x : combined) x = std::pow(x, 1.0 / bv);
      rhs = std::pow(rhs, 1.0 / bv);
      const double lhs = lorentz_quasinorm(spec, tuple.front().with_values(std::move(combined))).value;
      ratio = rhs > 0 ? lhs / rhs : 1.0;
    }
    auto& slot = by_m[tuple.size()];
    if (ratio > slot.first || slot.first == 0.0) slot = {ratio, t};
    out.c_emp = std::max(out.c_emp, ratio);
  }
  std::vector<double> xs, ys;
  for (const auto& [m, best] : by_m) {
    out.sizes.push_back(m);
    out.max_ratio.push_back(best.first);
    out.witness = best.second;
    xs.push_back(std::log(static_cast<double>(m)));
    ys.push_back(std::log(best.first));
  }
  if (xs.size() >= 2) {
    out.growth_slope = fit_line(xs, ys).slope;
    out.violated = out.growth_slope > slope_threshold;
  }
  return out;
}

MinkowskiResult minkowski_property_check(const SampledFunction& f2d, double p) {
  if (f2d.dim() != 2) fail(ErrorKind::InvalidArgument, "minkowski_property_check: need a two-variable function");
  if (!(p >= 1.0)) fail(ErrorKind::NotApplicable, "minkowski_property_check: L_p must be a Banach function space (p >= 1)");
  const std::size_t nx = f2d.cells()[0], ny = f2d.cells()[1];
  const double dx = f2d.cell_width(0), dy = f2d.cell_width(1);
  const bool p_inf = std::isinf(p);
  auto lp = [&](const std::vector<double>& col) {
    if (p_inf) {
      double m = 0.0;
      for (double v : col) m = std::max(m, std::fabs(v));
      return m;
    }
    double s = 0.0;
    for (double v : col) s += std::pow(std::fabs(v), p);
    return std::pow(s * dx, 1.0 / p);
  };
  std::vector<double> inner(nx, 0.0), slice(nx);
  double rhs = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      slice[i] = f2d[i * ny + j];
      inner[i] += slice[i] * dy;
    }
    rhs += lp(slice) * dy;
  }
  MinkowskiResult out;
  out.lhs = lp(inner);
  out.rhs = rhs;
  out.gap = out.lhs - out.rhs;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

}  // namespace funspace
