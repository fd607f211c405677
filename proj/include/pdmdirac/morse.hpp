#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/grid.hpp"
#include "pdmdirac/model.hpp"
#include "pdmdirac/numerics.hpp"
#include "pdmdirac/polys.hpp"

namespace pdmdirac {

struct MorseLevel {
  int n;
  double kappa; // 2 omega0 / alpha - 2n
  double ksq;   // E^2 - 1/4
  double energy;
};

enum class Provenance { closed_form, numeric };

struct Spectrum {
  MorseParams params;
  std::vector<MorseLevel> levels;
  Provenance provenance;
};

/// Number of bound levels: n = 0..n_max with n_max the largest integer
/// strictly below omega0/alpha.
inline int level_count(const MorseParams &p) {
  const double r = p.omega0() / p.alpha();
  const double nearest = std::round(r);
  // Ratios that are integers up to rounding keep the strict bound.
  if (std::abs(r - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * r)
    return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(r));
}

inline int max_level(const MorseParams &p) { return level_count(p) - 1; }

inline double level_kappa(int n, const MorseParams &p) { return 2.0 * p.omega0() / p.alpha() - 2.0 * n; }

inline double level_ksq(int n, const MorseParams &p) {
  const double d = p.omega0() - p.alpha() * n;
  return p.omega0() * p.omega0() - d * d;
}

inline double level_energy(int n, const MorseParams &p) { return std::sqrt(level_ksq(n, p) + rest_energy * rest_energy); }

inline void require_bound_level(int n, const MorseParams &p) {
  if (n < 0 || n > max_level(p))
    throw domain_error("unbound level: n = " + std::to_string(n) + " outside 0.." + std::to_string(max_level(p)));
}

inline MorseLevel closed_form_level(int n, const MorseParams &p) {
  require_bound_level(n, p);
  return {n, level_kappa(n, p), level_ksq(n, p), level_energy(n, p)};
}

inline Spectrum closed_form_spectrum(const MorseParams &p) {
  Spectrum s{p, {}, Provenance::closed_form};
  for (int n = 0; n < level_count(p); ++n) s.levels.push_back(closed_form_level(n, p));
  return s;
}

// D+ = E + m0 v0^2, the denominator relating the spinor components.
inline double upper_denominator(int n, const MorseParams &p) { return level_energy(n, p) + rest_energy; }

// The denominator printed with the closed-form lower component: E + 1/4.
inline double printed_denominator(int n, const MorseParams &p) {
  const double d = p.omega0() - p.alpha() * n;
  return std::sqrt(0.25 + p.omega0() * p.omega0() - d * d) + 0.25;
}

// Bracket of the printed lower component:
// 4 omega1 x L_{n-1}^{kappa+1}(xi) + (alpha + 2 n alpha + 4 omega1 x) L_n^kappa(xi).
inline double printed_lower_bracket(int n, double x, const MorseParams &p) {
  const double kappa = level_kappa(n, p);
  const double xi = 2.0 * p.omega1() * x / p.alpha();
  const double w1x4 = 4.0 * p.omega1() * x;
  return w1x4 * laguerre_or_zero(n - 1, kappa + 1.0, xi) +
         (p.alpha() + 2.0 * n * p.alpha() + w1x4) * laguerre(n, kappa, xi);
}

enum class Normalization { none, component, spinor };

template <typename T>
struct WaveFunction {
  Field<T> field;
  double norm_constant;
};

namespace detail {

enum class Shape { upper, lower_operator, lower_printed };

// Closed-form components with unit normalisation constant N. On x-grids:
//   upper          e^{-xi/2} x^{(kappa-1)/2} L_n^kappa(xi)
//   lower_operator i alpha/D+ e^{-xi/2} x^{(kappa-1)/2} [n L_n^kappa + xi L_{n-1}^{kappa+1}]
//   lower_printed    i/(2 sqrt(alpha) Dcal) e^{-xi/2} x^{(kappa-2)/2} [printed bracket]
// On t-grids every component is multiplied by sqrt(v_f) = sqrt(alpha x).
inline std::complex<double> shape_value(Shape shape, int n, double point, Coordinate coord, const MorseParams &p) {
  const double a = p.alpha();
  const double kappa = level_kappa(n, p);
  double logx, x;
  if (coord == Coordinate::t) {
    logx = a * point;
    x = std::exp(logx);
  } else {
    x = point;
    logx = std::log(x);
  }
  const double xi = 2.0 * p.omega1() * x / a;
  const double measure = coord == Coordinate::t ? 0.5 * (std::log(a) + logx) : 0.0; // log sqrt(alpha x)
  switch (shape) {
  case Shape::upper:
    return std::exp(0.5 * (kappa - 1.0) * logx - 0.5 * xi + measure) * laguerre(n, kappa, xi);
  case Shape::lower_operator: {
    const double bracket = n * laguerre(n, kappa, xi) + xi * laguerre_or_zero(n - 1, kappa + 1.0, xi);
    const double mag = a / upper_denominator(n, p) * std::exp(0.5 * (kappa - 1.0) * logx - 0.5 * xi + measure) * bracket;
    return {0.0, mag};
  }
  case Shape::lower_printed: {
    const double mag = std::exp(0.5 * (kappa - 2.0) * logx - 0.5 * xi + measure) /
                       (2.0 * std::sqrt(a) * printed_denominator(n, p)) * printed_lower_bracket(n, x, p);
    return {0.0, mag};
  }
  }
  return {};
}

inline void require_wavefunction_grid(const Grid &g) {
  if (g.coordinate() == Coordinate::t) return;
  if (g.coordinate() != Coordinate::x) throw grid_error("wavefunctions are rendered on t- or x-grids only");
  if (!(g.lo() > 0.0)) throw domain_error("wavefunction x-grid must lie in x > 0");
}

inline ComplexField shape_field(Shape shape, int n, const Grid &g, const MorseParams &p) {
  std::vector<std::complex<double>> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = shape_value(shape, n, g[i], g.coordinate(), p);
  return ComplexField(g, std::move(v));
}

inline ScalarField real_part(const ComplexField &f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i].real();
  return ScalarField(f.grid(), std::move(v));
}

} // namespace detail

/// Normalisation constant N for level n on grid g (measure dt or dx).
/// component: integral |psi+|^2 = 1; spinor: integral |psi+|^2 + |psi-|^2 = 1
/// with the operator-derived lower component.
inline double normalization_constant(int n, const MorseParams &p, const Grid &g, Normalization mode) {
  require_bound_level(n, p);
  detail::require_wavefunction_grid(g);
  if (mode == Normalization::none) return 1.0;
  double total = norm_squared(detail::shape_field(detail::Shape::upper, n, g, p));
  if (mode == Normalization::spinor) total += norm_squared(detail::shape_field(detail::Shape::lower_operator, n, g, p));
  return 1.0 / std::sqrt(total);
}

/// Upper component of level n: Phi+ on a t-grid, psi+ on an x-grid. Real and
/// positive on its first lobe.
inline WaveFunction<double> upper_wavefunction(int n, const MorseParams &p, const Grid &g,
                                               Normalization mode = Normalization::component) {
  const double N = normalization_constant(n, p, g, mode);
  return {detail::real_part(detail::shape_field(detail::Shape::upper, n, g, p)).scaled(N), N};
}

/// Lower component obtained by applying (-i sqrt(v) d/dx sqrt(v) + i W)/D+ to
/// the upper component analytically; identically zero for n = 0.
inline WaveFunction<std::complex<double>> lower_wavefunction_operator(int n, const MorseParams &p, const Grid &g,
                                                                      Normalization mode = Normalization::component) {
  const double N = normalization_constant(n, p, g, mode);
  return {detail::shape_field(detail::Shape::lower_operator, n, g, p).scaled(N), N};
}

/// Verbatim evaluation of the printed closed-form lower component (with the
/// same N as the upper component). Kept for comparison only.
inline WaveFunction<std::complex<double>> lower_wavefunction_printed(int n, const MorseParams &p, const Grid &g,
                                                                   Normalization mode = Normalization::component) {
  const double N = normalization_constant(n, p, g, mode);
  return {detail::shape_field(detail::Shape::lower_printed, n, g, p).scaled(N), N};
}

struct UpperJet {
  double value;
  double d1;
  double d2;
};

/// Unnormalised Phi+(t) of level n with its first and second t-derivatives,
/// all analytic (derivatives of L through -L_{n-1}^{kappa+1}, L_{n-2}^{kappa+2}).
inline UpperJet upper_t_jet(int n, double t, const MorseParams &p) {
  const double a = p.alpha();
  const double kappa = level_kappa(n, p);
  const double half = 0.5 * kappa;
  const double xi = 2.0 * p.omega1() / a * std::exp(a * t);
  const double pre = std::sqrt(a) * std::exp(half * a * t - 0.5 * xi);
  const double L = laguerre(n, kappa, xi);
  const double dL = laguerre_deriv(n, kappa, xi);
  const double d2L = laguerre_deriv2(n, kappa, xi);
  // d/dt = alpha * xi d/dxi acting on xi^{kappa/2} e^{-xi/2} L.
  const double M = (half - 0.5 * xi) * L + xi * dL;
  const double dM = -0.5 * L + (half - 0.5 * xi) * dL + dL + xi * d2L;
  return {pre * L, a * pre * M, a * a * pre * ((half - 0.5 * xi) * M + xi * dM)};
}

} // namespace pdmdirac
