#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdmdirac/errors.hpp"

namespace pdmdirac {

enum class Coordinate { x, t, y, xi };

inline std::string_view to_string(Coordinate c) {
  switch (c) {
  case Coordinate::x: return "x";
  case Coordinate::t: return "t";
  case Coordinate::y: return "y";
  case Coordinate::xi: return "xi";
  }
  return "?";
}

// 1-D sample grid in a named coordinate. Uniform grids are described by
// (lo, hi, n); mapped grids carry explicit strictly increasing abscissae
// (e.g. x_i = exp(alpha t_i) obtained from a uniform t-grid). Points are
// shared between copies and never mutated.
class Grid {
public:
  static constexpr std::size_t min_points = 5;

  static Grid uniform(Coordinate c, double lo, double hi, std::size_t n) {
    if (n < min_points) throw grid_error("grid needs at least 5 points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw grid_error("grid endpoints must be finite with lo < hi");
    std::vector<double> pts(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lo + h * static_cast<double>(i);
    pts.back() = hi;
    return Grid(c, std::move(pts), true, h);
  }

  static Grid mapped(Coordinate c, std::vector<double> points) {
    if (points.size() < min_points) throw grid_error("grid needs at least 5 points");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (!(points[i] > points[i - 1])) throw grid_error("mapped grid abscissae must be strictly increasing");
    return Grid(c, std::move(points), false, 0.0);
  }

  Coordinate coordinate() const { return coord_; }
  std::size_t size() const { return points_->size(); }
  bool is_uniform() const { return uniform_; }
  double lo() const { return points_->front(); }
  double hi() const { return points_->back(); }
  double operator[](std::size_t i) const { return (*points_)[i]; }
  std::span<const double> points() const { return *points_; }

  double spacing() const {
    if (!uniform_) throw grid_error("spacing() requested on a non-uniform grid");
    return h_;
  }

  void require_uniform(std::string_view who) const {
    if (!uniform_) throw grid_error(std::string(who) + ": requires a uniform grid");
  }

  void require(Coordinate c, std::string_view who) const {
    if (coord_ != c)
      throw grid_error(std::string(who) + ": expected " + std::string(to_string(c)) + "-grid, got " +
                       std::string(to_string(coord_)) + "-grid");
  }

  friend bool operator==(const Grid &a, const Grid &b) {
    if (a.points_ == b.points_) return a.coord_ == b.coord_;
    return a.coord_ == b.coord_ && a.uniform_ == b.uniform_ && *a.points_ == *b.points_;
  }

private:
  Grid(Coordinate c, std::vector<double> pts, bool uniform, double h)
      : coord_(c), points_(std::make_shared<const std::vector<double>>(std::move(pts))), uniform_(uniform),
        h_(h) {}

  Coordinate coord_;
  std::shared_ptr<const std::vector<double>> points_;
  bool uniform_;
  double h_;
};

// Samples of a real or complex function on a grid.
template <typename T>
class Field {
public:
  using value_type = T;

  Field(Grid grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw grid_error("field length does not match grid");
  }

  explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), T{}) {}

  template <typename F>
  static Field sample(const Grid &grid, F &&f) {
    std::vector<T> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = static_cast<T>(f(grid[i]));
    return Field(grid, std::move(v));
  }

  const Grid &grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const T &operator[](std::size_t i) const { return values_[i]; }
  std::span<const T> values() const { return values_; }

  double abscissa(std::size_t i) const { return grid_[i]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto &v : values_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

  Field scaled(T factor) const {
    std::vector<T> v(values_);
    for (auto &e : v) e *= factor;
    return Field(grid_, std::move(v));
  }

private:
  Grid grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<std::complex<double>>;

template <typename T>
void require_same_grid(const Field<T> &a, const Field<T> &b, std::string_view who) {
  if (!(a.grid() == b.grid())) throw grid_error(std::string(who) + ": fields live on different grids");
}

inline ComplexField to_complex(const ScalarField &f) {
  std::vector<std::complex<double>> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i];
  return ComplexField(f.grid(), std::move(v));
}

} // namespace pdmdirac
