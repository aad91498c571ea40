#pragma once

// Uniform-grid model of measurable functions on a bounded box in R^n.
//
// A SampledFunction is piecewise constant on the cells of a uniform grid, so
// every integral over the box is an exact cell sum. Values are stored in
// row-major order (last axis fastest).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace funspace {

class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);

  /// One-dimensional interval [a, b].
  static Box interval(double a, double b) { return Box({a}, {b}); }

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double width(std::size_t axis) const { return upper_.at(axis) - lower_.at(axis); }
  double volume() const noexcept { return volume_; }

  bool contains(const Box& other, double tol = 1e-12) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  double volume_ = 0.0;
};

/// Sorted, duplicate-free list of flat cell indices.
using CellSet = std::vector<std::size_t>;

class SampledFunction {
 public:
  SampledFunction(Box box, std::vector<std::size_t> cells, std::vector<double> values);

  /// Zero function on the grid.
  static SampledFunction zeros(Box box, std::vector<std::size_t> cells);

  /// Samples `fn` at the cell centers.
  static SampledFunction from_centers(Box box, std::vector<std::size_t> cells,
                                      const std::function<double(std::span<const double>)>& fn);

  const Box& box() const noexcept { return box_; }
  const std::vector<std::size_t>& cells() const noexcept { return cells_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t dim() const noexcept { return cells_.size(); }
  double cell_measure() const noexcept { return cell_measure_; }
  double cell_width(std::size_t axis) const { return box_.width(axis) / static_cast<double>(cells_.at(axis)); }
  double operator[](std::size_t i) const { return values_[i]; }

  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> multi) const;
  std::vector<double> cell_center(std::size_t flat) const;

  /// Same grid, new values.
  SampledFunction with_values(std::vector<double> values) const;

  bool same_grid(const SampledFunction& other) const noexcept;

 private:
  Box box_;
  std::vector<std::size_t> cells_;
  std::vector<double> values_;
  double cell_measure_ = 0.0;
};

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator-(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(double c, const SampledFunction& f);
SampledFunction abs(const SampledFunction& f);

/// Throws GridMismatch unless both functions share box and cell counts.
void require_same_grid(const SampledFunction& f, const SampledFunction& g);

/// Grid realization of mu(E): |E| * cell_measure.
double measure_of(const CellSet& set, const SampledFunction& grid);

/// d(f, g) = integral of min(1, |f - g|); metrizes convergence in measure on the box.
double dist_in_measure(const SampledFunction& f, const SampledFunction& g);

/// Copy of `f` on the aligned sub-box `sub`.
SampledFunction restrict(const SampledFunction& f, const Box& sub);

/// f * chi_E on the same grid.
SampledFunction mask(const SampledFunction& f, const CellSet& set);

/// Cells whose centers lie inside `region` (closed box).
CellSet cells_inside(const SampledFunction& grid, const Box& region);

/// Complement of `set` in the grid.
CellSet complement(const SampledFunction& grid, const CellSet& set);

double integral(const SampledFunction& f);

/// Lebesgue (quasi-)norm on the grid, p in (0, inf]; p = +infinity gives max |f|.
double lp_norm(const SampledFunction& f, double p);

/// Ordered list of cell subsets of one grid.
class MeasurableSetSeq {
 public:
  MeasurableSetSeq(std::size_t cell_count, std::vector<CellSet> sets);

  /// E_k = cells whose centers lie within Euclidean distance radii[k] of `center`.
  /// Radii must be strictly decreasing; the result is nested with measures -> 0
  /// once the radius drops below half a cell.
  static MeasurableSetSeq shrinking_balls(const SampledFunction& grid,
                                          std::span<const double> center,
                                          std::span<const double> radii);

  const std::vector<CellSet>& sets() const noexcept { return sets_; }
  std::size_t size() const noexcept { return sets_.size(); }
  std::size_t cell_count() const noexcept { return cell_count_; }

  /// E_{k+1} subset of E_k for all k.
  bool is_nested() const;

  std::vector<double> measures(const SampledFunction& grid) const;

 private:
  std::size_t cell_count_;
  std::vector<CellSet> sets_;
};

}  // namespace funspace
