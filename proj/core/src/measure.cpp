#include "funspace/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "funspace/error.hpp"

namespace funspace {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidSet: return "InvalidSet";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::InvalidThreshold: return "InvalidThreshold";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::ResolutionError: return "ResolutionError";
    case ErrorKind::InvalidSequence: return "InvalidSequence";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size())
    fail(ErrorKind::InvalidArgument, "box: lower/upper must be non-empty and of equal dimension");
  volume_ = 1.0;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
      fail(ErrorKind::InvalidArgument, "box: require finite lower[i] < upper[i]");
    volume_ *= upper_[i] - lower_[i];
  }
  if (!(volume_ > 0.0) || !std::isfinite(volume_))
    fail(ErrorKind::InvalidArgument, "box: volume must be positive and finite");
}

bool Box::contains(const Box& other, double tol) const {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double slack = tol * std::max(1.0, width(i));
    if (other.lower_[i] < lower_[i] - slack || other.upper_[i] > upper_[i] + slack) return false;
  }
  return true;
}

SampledFunction::SampledFunction(Box box, std::vector<std::size_t> cells, std::vector<double> values)
    : box_(std::move(box)), cells_(std::move(cells)), values_(std::move(values)) {
  if (cells_.size() != box_.dim())
    fail(ErrorKind::InvalidArgument, "sampled function: cells_per_axis must match box dimension");
  std::size_t count = 1;
  for (auto c : cells_) {
    if (c == 0) fail(ErrorKind::InvalidArgument, "sampled function: cells_per_axis must be positive");
    count *= c;
  }
  if (values_.size() != count) {
    std::ostringstream os;
    os << "sampled function: expected " << count << " values, got " << values_.size();
    fail(ErrorKind::InvalidArgument, os.str());
  }
  for (double v : values_)
    if (!std::isfinite(v))
      fail(ErrorKind::InvalidArgument, "sampled function: values must be finite (a.e.-finite functions only)");
  cell_measure_ = box_.volume() / static_cast<double>(count);
}

SampledFunction SampledFunction::zeros(Box box, std::vector<std::size_t> cells) {
  std::size_t count = 1;
  for (auto c : cells) count *= c;
  return SampledFunction(std::move(box), std::move(cells), std::vector<double>(count, 0.0));
}

SampledFunction SampledFunction::from_centers(Box box, std::vector<std::size_t> cells,
                                              const std::function<double(std::span<const double>)>& fn) {
  SampledFunction out = zeros(std::move(box), std::move(cells));
  std::vector<double> values(out.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto x = out.cell_center(i);
    values[i] = fn(x);
  }
  return out.with_values(std::move(values));
}

std::vector<std::size_t> SampledFunction::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(cells_.size());
  for (std::size_t k = cells_.size(); k-- > 0;) {
    idx[k] = flat % cells_[k];
    flat /= cells_[k];
  }
  return idx;
}

std::size_t SampledFunction::flat_index(std::span<const std::size_t> multi) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < cells_.size(); ++k) flat = flat * cells_[k] + multi[k];
  return flat;
}

std::vector<double> SampledFunction::cell_center(std::size_t flat) const {
  const auto idx = multi_index(flat);
  std::vector<double> x(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    x[k] = box_.lower()[k] + (static_cast<double>(idx[k]) + 0.5) * cell_width(k);
  return x;
}

SampledFunction SampledFunction::with_values(std::vector<double> values) const {
  return SampledFunction(box_, cells_, std::move(values));
}

bool SampledFunction::same_grid(const SampledFunction& other) const noexcept {
  return cells_ == other.cells_ && box_ == other.box_;
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  if (!f.same_grid(g)) fail(ErrorKind::GridMismatch, "functions are sampled on different grids");
}

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] + g[i];
  return f.with_values(std::move(v));
}

SampledFunction operator-(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] - g[i];
  return f.with_values(std::move(v));
}

SampledFunction operator*(double c, const SampledFunction& f) {
  std::vector<double> v(f.values());
  for (auto& x : v) x *= c;
  return f.with_values(std::move(v));
}

SampledFunction abs(const SampledFunction& f) {
  std::vector<double> v(f.values());
  for (auto& x : v) x = std::fabs(x);
  return f.with_values(std::move(v));
}

namespace {

void check_indices(const CellSet& set, std::size_t count) {
  for (auto i : set)
    if (i >= count) {
      std::ostringstream os;
      os << "cell index " << i << " out of range (grid has " << count << " cells)";
      fail(ErrorKind::InvalidSet, os.str());
    }
}

}  // namespace

double measure_of(const CellSet& set, const SampledFunction& grid) {
  check_indices(set, grid.size());
  return static_cast<double>(set.size()) * grid.cell_measure();
}

double dist_in_measure(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::min(1.0, std::fabs(f[i] - g[i]));
  return sum * f.cell_measure();
}

SampledFunction restrict(const SampledFunction& f, const Box& sub) {
  if (sub.dim() != f.dim()) fail(ErrorKind::AlignmentError, "restrict: dimension mismatch");
  std::vector<std::size_t> first(f.dim()), count(f.dim());
  for (std::size_t k = 0; k < f.dim(); ++k) {
    const double h = f.cell_width(k);
    const double lo = (sub.lower()[k] - f.box().lower()[k]) / h;
    const double hi = (sub.upper()[k] - f.box().lower()[k]) / h;
    const double rlo = std::round(lo), rhi = std::round(hi);
    if (std::fabs(lo - rlo) > 1e-9 || std::fabs(hi - rhi) > 1e-9 || rlo < 0 ||
        rhi > static_cast<double>(f.cells()[k]))
      fail(ErrorKind::AlignmentError, "restrict: sub-box must lie inside the box on cell boundaries");
    first[k] = static_cast<std::size_t>(rlo);
    count[k] = static_cast<std::size_t>(rhi - rlo);
  }
  auto out = SampledFunction::zeros(sub, count);
  std::vector<double> values(out.size());
  std::vector<std::size_t> parent(f.dim());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto local = out.multi_index(i);
    for (std::size_t k = 0; k < f.dim(); ++k) parent[k] = local[k] + first[k];
    values[i] = f[f.flat_index(parent)];
  }
  return out.with_values(std::move(values));
}

SampledFunction mask(const SampledFunction& f, const CellSet& set) {
  check_indices(set, f.size());
  std::vector<double> v(f.size(), 0.0);
  for (auto i : set) v[i] = f[i];
  return f.with_values(std::move(v));
}

CellSet cells_inside(const SampledFunction& grid, const Box& region) {
  if (region.dim() != grid.dim()) fail(ErrorKind::InvalidArgument, "cells_inside: dimension mismatch");
  CellSet out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.cell_center(i);
    bool inside = true;
    for (std::size_t k = 0; k < x.size() && inside; ++k)
      inside = x[k] >= region.lower()[k] && x[k] <= region.upper()[k];
    if (inside) out.push_back(i);
  }
  return out;
}

CellSet complement(const SampledFunction& grid, const CellSet& set) {
  check_indices(set, grid.size());
  std::vector<bool> in(grid.size(), false);
  for (auto i : set) in[i] = true;
  CellSet out;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

double integral(const SampledFunction& f) {
  return std::accumulate(f.values().begin(), f.values().end(), 0.0) * f.cell_measure();
}

double lp_norm(const SampledFunction& f, double p) {
  if (!(p > 0.0)) fail(ErrorKind::InvalidArgument, "lp_norm: p must be positive");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::fabs(v));
    return m;
  }
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::fabs(v), p);
  return std::pow(sum * f.cell_measure(), 1.0 / p);
}

MeasurableSetSeq::MeasurableSetSeq(std::size_t cell_count, std::vector<CellSet> sets)
    : cell_count_(cell_count), sets_(std::move(sets)) {
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    check_indices(s, cell_count_);
  }
}

MeasurableSetSeq MeasurableSetSeq::shrinking_balls(const SampledFunction& grid,
                                                   std::span<const double> center,
                                                   std::span<const double> radii) {
  if (center.size() != grid.dim())
    fail(ErrorKind::InvalidArgument, "shrinking_balls: center dimension mismatch");
  for (std::size_t k = 1; k < radii.size(); ++k)
    if (!(radii[k] < radii[k - 1]))
      fail(ErrorKind::InvalidSequence, "shrinking_balls: radii must be strictly decreasing");
  std::vector<double> dist(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.cell_center(i);
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - center[k]) * (x[k] - center[k]);
    dist[i] = std::sqrt(d2);
  }
  std::vector<CellSet> sets;
  sets.reserve(radii.size());
  for (double r : radii) {
    CellSet s;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (dist[i] <= r) s.push_back(i);
    sets.push_back(std::move(s));
  }
  return MeasurableSetSeq(grid.size(), std::move(sets));
}

bool MeasurableSetSeq::is_nested() const {
  for (std::size_t k = 1; k < sets_.size(); ++k)
    if (!std::includes(sets_[k - 1].begin(), sets_[k - 1].end(), sets_[k].begin(), sets_[k].end()))
      return false;
  return true;
}

std::vector<double> MeasurableSetSeq::measures(const SampledFunction& grid) const {
  if (grid.size() != cell_count_) fail(ErrorKind::GridMismatch, "set sequence belongs to a different grid");
  std::vector<double> m;
  m.reserve(sets_.size());
  for (const auto& s : sets_) m.push_back(measure_of(s, grid));
  return m;
}

}  // namespace funspace
