#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdmdirac::fd {

// Second-order first derivative on a uniform grid: central in the interior,
// one-sided three-point stencils at the two ends.
template <typename T>
std::vector<T> first_derivative(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  const double inv2h = 1.0 / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2h;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return d;
}

// Second-order second derivative; four-point one-sided stencils at the ends.
template <typename T>
std::vector<T> second_derivative(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  const double invh2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * invh2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * invh2;
  return d;
}

// Fourth-order central first derivative in the interior, second-order central
// at the points next to the ends, one-sided second order at the ends.
template <typename T>
std::vector<T> first_derivative_4th(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d = first_derivative(f, h);
  const double inv12h = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) * inv12h;
  return d;
}

} // namespace pdmdirac::fd
