#include "funspace/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "funspace/error.hpp"
#include "funspace/parallel.hpp"

namespace funspace {

namespace {

constexpr double kAlignTol = 1e-9;

double min_cell_width(const SampledFunction& f) {
  double w = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < f.dim(); ++a) w = std::min(w, f.cell_width(a));
  return w;
}

// All non-zero lattice shifts with Euclidean length <= t_max.
std::vector<std::vector<long>> lattice_shifts(const SampledFunction& f, double t_max) {
  const std::size_t n = f.dim();
  std::vector<long> bound(n);
  for (std::size_t a = 0; a < n; ++a)
    bound[a] = static_cast<long>(std::floor(t_max / f.cell_width(a) * (1 + 1e-12)));
  const double r2max = t_max * t_max * (1 + 1e-12);
  std::vector<std::vector<long>> out;
  std::vector<long> cur(n);
  auto rec = [&](auto&& self, std::size_t axis, double r2) -> void {
    if (axis == n) {
      if (std::any_of(cur.begin(), cur.end(), [](long v) { return v != 0; })) out.push_back(cur);
      return;
    }
    const double w = f.cell_width(axis);
    for (long k = -bound[axis]; k <= bound[axis]; ++k) {
      const double r = r2 + (k * w) * (k * w);
      if (r > r2max) continue;
      cur[axis] = k;
      self(self, axis + 1, r);
    }
  };
  rec(rec, 0, 0.0);
  return out;
}

double shift_length(const SampledFunction& f, const std::vector<long>& shift) {
  double r2 = 0.0;
  for (std::size_t a = 0; a < shift.size(); ++a) {
    const double d = shift[a] * f.cell_width(a);
    r2 += d * d;
  }
  return std::sqrt(r2);
}

ModulusTable assemble(const SampledFunction& f, const std::vector<std::vector<long>>& shifts,
                      std::vector<double> norms) {
  std::vector<std::size_t> order(shifts.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> radius(shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) radius[i] = shift_length(f, shifts[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return radius[x] < radius[y]; });
  ModulusTable t;
  t.lattice_spacing = min_cell_width(f);
  double run = 0.0;
  std::size_t best = 0;
  for (std::size_t i : order) {
    if (t.radii.empty() || norms[i] > run) {
      run = std::max(run, norms[i]);
      best = i;
    }
    if (!t.radii.empty() && radius[i] == t.radii.back()) {
      t.values.back() = run;
      t.argmax.back() = shifts[best];
    } else {
      t.radii.push_back(radius[i]);
      t.values.push_back(run);
      t.argmax.push_back(shifts[best]);
    }
  }
  return t;
}

// In-range test for a shifted multi-index.
bool shifted(const std::vector<std::size_t>& cells, const std::vector<std::size_t>& m, const std::vector<long>& h,
             std::vector<std::size_t>& out) {
  for (std::size_t a = 0; a < m.size(); ++a) {
    const long v = static_cast<long>(m[a]) + h[a];
    if (v < 0 || v >= static_cast<long>(cells[a])) return false;
    out[a] = static_cast<std::size_t>(v);
  }
  return true;
}

double tent(double x, double c, double r) { return std::max(0.0, 1.0 - std::fabs(x - c) / r); }

std::size_t axis_index(const SampledFunction& grid, std::size_t axis, double x) {
  const double u = (x - grid.box().lower()[axis]) / grid.cell_width(axis);
  const double r = std::round(u);
  if (std::fabs(u - r) > kAlignTol * std::max(1.0, std::fabs(u)))
    fail(ErrorKind::AlignmentError, "family: coordinate is not on a cell boundary");
  if (r < 0 || r > static_cast<double>(grid.cells()[axis]))
    fail(ErrorKind::InvalidArgument, "family: coordinate outside the box");
  return static_cast<std::size_t>(r);
}

}  // namespace

BesovSpec::BesovSpec(Param s, Param p, Param q, int n) : s_(std::move(s)), p_(std::move(p)), q_(std::move(q)), n_(n) {
  if (s_.is_infinite() || decide_sign(s_).sign <= 0 || compare(s_, Param::exact(1)).sign >= 0)
    fail(ErrorKind::InvalidArgument, "Besov spec: smoothness s must lie in (0, 1)");
  if (!(p_.value() > 0.0)) fail(ErrorKind::InvalidArgument, "Besov spec: p must lie in (0, inf]");
  if (!(q_.value() > 0.0)) fail(ErrorKind::InvalidArgument, "Besov spec: q must lie in (0, inf]");
  if (n_ < 1) fail(ErrorKind::InvalidArgument, "Besov spec: dimension n must be >= 1");
}

std::string BesovSpec::describe() const {
  std::ostringstream os;
  os << "B^{" << s_.to_string() << "}_{" << p_.to_string() << "," << q_.to_string() << "}(R^" << n_ << ")";
  return os.str();
}

SampledFunction difference_cells(const SampledFunction& f, const std::vector<long>& shift) {
  if (shift.size() != f.dim()) fail(ErrorKind::InvalidArgument, "difference: shift dimension mismatch");
  std::vector<double> out(f.size());
  std::vector<std::size_t> tgt(f.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto m = f.multi_index(i);
    const double moved = shifted(f.cells(), m, shift, tgt) ? f[f.flat_index(tgt)] : 0.0;
    out[i] = moved - f[i];
  }
  return f.with_values(std::move(out));
}

SampledFunction difference(const SampledFunction& f, const std::vector<double>& h) {
  if (h.size() != f.dim()) fail(ErrorKind::InvalidArgument, "difference: shift dimension mismatch");
  std::vector<long> shift(h.size());
  for (std::size_t a = 0; a < h.size(); ++a) {
    const double u = h[a] / f.cell_width(a);
    const double r = std::round(u);
    if (std::fabs(u - r) > kAlignTol * std::max(1.0, std::fabs(u)))
      fail(ErrorKind::AlignmentError, "difference: shift is not a multiple of the cell width");
    shift[a] = static_cast<long>(r);
  }
  return difference_cells(f, shift);
}

double ModulusTable::at(double t) const {
  const auto it = std::upper_bound(radii.begin(), radii.end(), t * (1 + 1e-12));
  if (it == radii.begin()) return 0.0;
  return values[static_cast<std::size_t>(it - radii.begin()) - 1];
}

ModulusTable modulus_table(const SampledFunction& f, const NormFn& norm, double t_max) {
  if (!(t_max > 0.0)) fail(ErrorKind::DomainError, "modulus: t must be positive");
  const auto shifts = lattice_shifts(f, t_max);
  std::vector<double> norms(shifts.size());
  parallel_for(shifts.size(), [&](std::size_t i) { norms[i] = norm(difference_cells(f, shifts[i])); });
  return assemble(f, shifts, std::move(norms));
}

ModulusTable modulus_table_lp(const SampledFunction& f, double p, double t_max) {
  if (!(t_max > 0.0)) fail(ErrorKind::DomainError, "modulus: t must be positive");
  if (!(p > 0.0)) fail(ErrorKind::InvalidArgument, "modulus: p must be positive");
  const bool p_inf = std::isinf(p);
  std::vector<std::size_t> support;
  std::vector<std::vector<std::size_t>> support_multi;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) {
      support.push_back(i);
      support_multi.push_back(f.multi_index(i));
    }
  const auto shifts = lattice_shifts(f, t_max);
  std::vector<double> norms(shifts.size(), 0.0);
  auto term = [&](double x) { return p_inf ? std::fabs(x) : std::pow(std::fabs(x), p); };
  parallel_for(shifts.size(), [&](std::size_t s) {
    const auto& h = shifts[s];
    std::vector<long> neg(h.size());
    for (std::size_t a = 0; a < h.size(); ++a) neg[a] = -h[a];
    std::vector<std::size_t> tgt(f.dim());
    double acc = 0.0;
    auto add = [&](double v) { acc = p_inf ? std::max(acc, v) : acc + v; };
    for (std::size_t k = 0; k < support.size(); ++k) {
      // points x in supp f: f(x + h) - f(x)
      const double moved = shifted(f.cells(), support_multi[k], h, tgt) ? f[f.flat_index(tgt)] : 0.0;
      add(term(moved - f[support[k]]));
      // points x = y - h with f(x) = 0 and f(y) != 0
      if (!shifted(f.cells(), support_multi[k], neg, tgt) || f[f.flat_index(tgt)] == 0.0) add(term(f[support[k]]));
    }
    norms[s] = p_inf ? acc : std::pow(acc * f.cell_measure(), 1.0 / p);
  });
  return assemble(f, shifts, std::move(norms));
}

double modulus(const SampledFunction& f, const NormFn& norm, double t) {
  if (!(t > 0.0)) fail(ErrorKind::DomainError, "modulus: t must be positive");
  if (t < min_cell_width(f) * (1 - 1e-12)) return 0.0;
  return modulus_table(f, norm, t).at(t);
}

BesovReport besov_quasinorm(const SampledFunction& f, const BesovSpec& spec) {
  if (static_cast<int>(f.dim()) != spec.n()) fail(ErrorKind::InvalidArgument, "besov_quasinorm: dimension mismatch");
  const double p = spec.p().value();
  const double s = spec.s().value();
  BesovReport r;
  r.lp_part = lp_norm(f, p);

  for (std::size_t i = 0; i < f.size() && !r.boundary_warning; ++i) {
    if (f[i] == 0.0) continue;
    const auto m = f.multi_index(i);
    for (std::size_t a = 0; a < m.size(); ++a)
      if (m[a] == 0 || m[a] + 1 == f.cells()[a]) r.boundary_warning = true;
  }

  const double cell = min_cell_width(f);
  r.J = std::max(0, static_cast<int>(std::lround(4.0 * std::log2(1.0 / (2.0 * cell)))));
  for (int j = 0; j <= r.J; ++j) r.probe_t.push_back(std::exp2(-j / 4.0));

  if (r.lp_part == 0.0) {
    r.probe_omega.assign(r.probe_t.size(), 0.0);
    return r;
  }
  const auto table = modulus_table_lp(f, p, 1.0);
  for (double t : r.probe_t) r.probe_omega.push_back(table.at(t));

  if (spec.q().is_infinite()) {
    for (std::size_t j = 0; j < r.probe_t.size(); ++j)
      r.seminorm_part = std::max(r.seminorm_part, std::pow(r.probe_t[j], -s) * r.probe_omega[j]);
  } else {
    const double q = spec.q().value();
    const double sq = s * q;
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < r.probe_t.size(); ++j) {
      const double lo = r.probe_t[j + 1], hi = r.probe_t[j];
      const double w = (std::pow(lo, -sq) - std::pow(hi, -sq)) / sq;
      acc += std::pow(r.probe_omega[j + 1], q) * w;
    }
    r.seminorm_part = std::pow(acc, 1.0 / q);
  }
  r.value = r.lp_part + r.seminorm_part;
  return r;
}

YAssumptionResult y_assumption_check(double s, const Param& q, const std::vector<double>& probe_T) {
  if (!(s >= 0.0 && s < 1.0)) fail(ErrorKind::InvalidArgument, "y_assumption_check: s must lie in [0, 1)");
  if (!(q.value() > 0.0)) fail(ErrorKind::InvalidArgument, "y_assumption_check: q must lie in (0, inf]");
  for (std::size_t i = 0; i < probe_T.size(); ++i) {
    if (!(probe_T[i] > 0.0 && probe_T[i] < 1.0))
      fail(ErrorKind::InvalidSequence, "y_assumption_check: probes must lie in (0, 1)");
    if (i > 0 && !(probe_T[i] < probe_T[i - 1]))
      fail(ErrorKind::InvalidSequence, "y_assumption_check: probes must decrease");
  }
  YAssumptionResult out;
  out.probe_T = probe_T;
  const bool q_inf = q.is_infinite();
  for (double T : probe_T) {
    double v;
    if (q_inf) {
      v = s > 0 ? std::pow(T, -s) : 1.0;
    } else {
      const double qv = q.value();
      const double integral = s > 0 ? (std::pow(T, -s * qv) - 1.0) / (s * qv) : std::log(1.0 / T);
      v = std::pow(integral, 1.0 / qv);
    }
    out.values.push_back(v);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (!(out.values[i] > out.values[i - 1])) increasing = false;
  const bool symbolic = s > 0 || !q_inf;
  out.satisfied = symbolic && increasing;
  if (!symbolic)
    out.rationale = "s = 0, q = inf: ||chi_(T,1)||_Y = 1 for every T, so ||1||_Y is finite";
  else if (s > 0)
    out.rationale = q_inf ? "||chi_(T,1)||_Y = T^{-s} -> inf" : "||chi_(T,1)||_Y^q = (T^{-sq} - 1)/(sq) -> inf";
  else
    out.rationale = "s = 0, q < inf: ||chi_(T,1)||_Y^q = log(1/T) -> inf";
  if (symbolic && !increasing) out.rationale += " (probe values not strictly increasing)";
  return out;
}

SampledFunction lipschitz_cutoff(const SampledFunction& grid, const Box& inner, double margin) {
  if (!(margin > 0.0)) fail(ErrorKind::InvalidArgument, "lipschitz_cutoff: margin must be positive");
  if (inner.dim() != grid.dim()) fail(ErrorKind::InvalidArgument, "lipschitz_cutoff: dimension mismatch");
  return SampledFunction::from_centers(grid.box(), grid.cells(), [&](std::span<const double> x) {
    double d2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double d = std::max({inner.lower()[a] - x[a], 0.0, x[a] - inner.upper()[a]});
      d2 += d * d;
    }
    return std::max(0.0, 1.0 - std::sqrt(d2) / margin);
  });
}

// ---------------------------------------------------------------------------

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::TranslatedBump: return "TranslatedBump";
    case FamilyKind::ConcentratingSpike: return "ConcentratingSpike";
    case FamilyKind::TensorHat: return "TensorHat";
    case FamilyKind::IndicatorUnion: return "IndicatorUnion";
    case FamilyKind::RandomStep: return "RandomStep";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (auto k : {FamilyKind::TranslatedBump, FamilyKind::ConcentratingSpike, FamilyKind::TensorHat,
                 FamilyKind::IndicatorUnion, FamilyKind::RandomStep})
    if (to_string(k) == s) return k;
  fail(ErrorKind::ParseError, "unknown family kind '" + s + "'");
}

double FamilySpec::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

std::size_t count_param(const FamilySpec& spec, const char* key, double fallback) {
  const double v = spec.get(key, fallback);
  if (!(v >= 1.0) || v != std::floor(v)) fail(ErrorKind::InvalidArgument, std::string("family: '") + key + "' must be a positive integer");
  return static_cast<std::size_t>(v);
}

FunctionFamily spikes(const FamilySpec& spec, const SampledFunction& grid) {
  const double kmin = spec.get("k_min", 1), kmax = spec.get("k_max", 8);
  const double p = spec.get("p", 1);
  const double origin = spec.get("origin", 0.0);
  const bool disjoint = spec.get("layout", 0) != 0;
  if (!(kmin >= 1) || kmax < kmin || kmin != std::floor(kmin) || kmax != std::floor(kmax))
    fail(ErrorKind::InvalidArgument, "ConcentratingSpike: need integers 1 <= k_min <= k_max");
  if (!(p > 0)) fail(ErrorKind::InvalidArgument, "ConcentratingSpike: p must be positive");
  const std::size_t n = grid.dim();
  FunctionFamily fam;
  fam.spec = spec;
  std::vector<std::size_t> start(n);
  for (std::size_t a = 0; a < n; ++a) start[a] = axis_index(grid, a, origin);
  for (double k = kmin; k <= kmax; k += 1) {
    const double side = std::pow(1.0 / k, 1.0 / static_cast<double>(n));
    std::vector<std::size_t> len(n);
    double measure = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double w = grid.cell_width(a);
      len[a] = static_cast<std::size_t>(std::lround(side / w));
      if (side < w * (1 - 1e-12) || len[a] == 0) {
        std::ostringstream os;
        os << "ConcentratingSpike: width " << side << " is below one cell (" << w << ")";
        fail(ErrorKind::ResolutionError, os.str());
      }
      if (start[a] + len[a] > grid.cells()[a]) fail(ErrorKind::InvalidArgument, "ConcentratingSpike: spike leaves the box");
      measure *= static_cast<double>(len[a]) * w;
    }
    const double height = std::isinf(p) ? 1.0 : std::pow(1.0 / measure, 1.0 / p);
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto m = grid.multi_index(i);
      bool in = true;
      for (std::size_t a = 0; a < n && in; ++a) in = m[a] >= start[a] && m[a] < start[a] + len[a];
      if (in) v[i] = height;
    }
    fam.members.push_back(grid.with_values(std::move(v)));
    fam.labels.push_back(k);
    if (disjoint) start[0] += len[0];
  }
  return fam;
}

}  // namespace

FunctionFamily make_family(const FamilySpec& spec, const Box& box, const std::vector<std::size_t>& cells) {
  const auto grid = SampledFunction::zeros(box, cells);
  const std::size_t n = grid.dim();
  std::vector<double> mid(n);
  for (std::size_t a = 0; a < n; ++a) mid[a] = 0.5 * (box.lower()[a] + box.upper()[a]);

  switch (spec.kind) {
    case FamilyKind::ConcentratingSpike:
      return spikes(spec, grid);
    case FamilyKind::TranslatedBump: {
      const std::size_t count = count_param(spec, "count", 4);
      const double width = spec.get("width", 0.5), spacing = spec.get("spacing", 1.0), height = spec.get("height", 1.0);
      const double start = spec.get("start", box.lower()[0] + width);
      if (!(width > 0)) fail(ErrorKind::InvalidArgument, "TranslatedBump: width must be positive");
      if (width < 2 * grid.cell_width(0)) fail(ErrorKind::ResolutionError, "TranslatedBump: bump narrower than two cells");
      FunctionFamily fam;
      fam.spec = spec;
      for (std::size_t k = 0; k < count; ++k) {
        const double c = start + static_cast<double>(k) * spacing;
        fam.members.push_back(SampledFunction::from_centers(box, cells, [&](std::span<const double> x) {
          double v = height * tent(x[0], c, width);
          for (std::size_t a = 1; a < n; ++a) v *= tent(x[a], mid[a], width);
          return v;
        }));
        fam.labels.push_back(static_cast<double>(k) * spacing);
      }
      return fam;
    }
    case FamilyKind::TensorHat: {
      const std::size_t count = count_param(spec, "count", 4);
      const double width = spec.get("width", 0.5), height = spec.get("height", 1.0);
      FunctionFamily fam;
      fam.spec = spec;
      for (std::size_t k = 0; k < count; ++k) {
        const double r = width * std::exp2(-0.5 * static_cast<double>(k));
        if (r < 2 * grid.cell_width(0)) fail(ErrorKind::ResolutionError, "TensorHat: hat narrower than two cells");
        fam.members.push_back(SampledFunction::from_centers(box, cells, [&](std::span<const double> x) {
          double v = height;
          for (std::size_t a = 0; a < n; ++a) v *= tent(x[a], mid[a], r);
          return v;
        }));
        fam.labels.push_back(static_cast<double>(k));
      }
      return fam;
    }
    case FamilyKind::IndicatorUnion: {
      const std::size_t count = count_param(spec, "count", 4), pieces = count_param(spec, "pieces", 3);
      std::mt19937_64 rng(static_cast<std::uint64_t>(spec.get("seed", 1)));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      FunctionFamily fam;
      fam.spec = spec;
      for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> v(grid.size(), 0.0);
        for (std::size_t piece = 0; piece < pieces; ++piece) {
          std::vector<double> lo(n), hi(n);
          for (std::size_t a = 0; a < n; ++a) {
            const double len = 0.25 * box.width(a) * unif(rng);
            lo[a] = box.lower()[a] + (box.width(a) - len) * unif(rng);
            hi[a] = lo[a] + len;
          }
          for (std::size_t i : cells_inside(grid, Box(lo, hi))) v[i] = 1.0;
        }
        fam.members.push_back(grid.with_values(std::move(v)));
        fam.labels.push_back(static_cast<double>(k));
      }
      return fam;
    }
    case FamilyKind::RandomStep: {
      const std::size_t count = count_param(spec, "count", 4), blocks = count_param(spec, "blocks", 8);
      std::mt19937_64 rng(static_cast<std::uint64_t>(spec.get("seed", 1)));
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      std::size_t table_size = 1;
      for (std::size_t a = 0; a < n; ++a) table_size *= blocks;
      FunctionFamily fam;
      fam.spec = spec;
      for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> table(table_size);
        for (auto& x : table) x = unif(rng);
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const auto m = grid.multi_index(i);
          std::size_t b = 0;
          for (std::size_t a = 0; a < n; ++a) b = b * blocks + m[a] * blocks / cells[a];
          v[i] = table[b];
        }
        fam.members.push_back(grid.with_values(std::move(v)));
        fam.labels.push_back(static_cast<double>(k));
      }
      return fam;
    }
  }
  fail(ErrorKind::InvalidArgument, "make_family: unknown kind");
}

FunctionFamily besov_ball_sample(const BesovSpec& spec, const Box& box, const std::vector<std::size_t>& cells,
                                 const Box& support, std::size_t count, std::uint64_t seed) {
  if (!box.contains(support)) fail(ErrorKind::InvalidArgument, "besov_ball_sample: support must lie inside the box");
  const auto grid = SampledFunction::zeros(box, cells);
  const std::size_t n = grid.dim();
  double min_w = std::numeric_limits<double>::infinity(), cell = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    min_w = std::min(min_w, support.width(a));
    cell = std::max(cell, grid.cell_width(a));
  }
  if (min_w < 8 * cell) fail(ErrorKind::ResolutionError, "besov_ball_sample: support spans fewer than 8 cells");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  FunctionFamily fam;
  fam.spec.kind = FamilyKind::TensorHat;
  fam.spec.params = {{"count", static_cast<double>(count)}, {"seed", static_cast<double>(seed)}};
  while (fam.members.size() < count) {
    std::vector<double> c(n);
    double r = (0.05 + 0.45 * unif(rng)) * min_w;
    for (std::size_t a = 0; a < n; ++a) {
      c[a] = support.lower()[a] + support.width(a) * unif(rng);
      r = std::min({r, c[a] - support.lower()[a], support.upper()[a] - c[a]});
    }
    if (r < 2 * cell) continue;
    auto f = SampledFunction::from_centers(box, cells, [&](std::span<const double> x) {
      double v = 1.0;
      for (std::size_t a = 0; a < n; ++a) v *= tent(x[a], c[a], r);
      return v;
    });
    const double norm = besov_quasinorm(f, spec).value;
    if (!(norm > 0.0)) continue;
    fam.members.push_back((1.0 / norm) * f);
    fam.labels.push_back(static_cast<double>(fam.members.size() - 1));
  }
  return fam;
}

}  // namespace funspace
