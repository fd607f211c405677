#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/grid.hpp"
#include "pdmdirac/model.hpp"

namespace pdmdirac {

inline double x_to_t(double x, double alpha) {
  if (!(x > 0.0)) throw domain_error("x_to_t: x must be > 0");
  return std::log(x) / alpha;
}

inline double t_to_x(double t, double alpha) { return std::exp(alpha * t); }

/// y(x) = integral from x0 to x of dz / v_f(z), composite Simpson with
/// `panels` parabolic panels (2 * panels subintervals). y(x0) = 0.
template <typename Velocity>
double y_of_x(double x, Velocity &&vf, double x0 = 1.0, int panels = 1024) {
  if (panels < 1) throw domain_error("y_of_x: need at least one panel");
  if (x == x0) {
    if (!(vf(x0) > 0.0)) throw domain_error("y_of_x: v_f must be > 0 on the integration interval");
    return 0.0;
  }
  const std::size_t m = 2 * static_cast<std::size_t>(panels);
  const double h = (x - x0) / static_cast<double>(m);
  double sum = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double z = (i == m) ? x : x0 + h * static_cast<double>(i);
    const double v = vf(z);
    if (!(v > 0.0)) throw domain_error("y_of_x: v_f must be > 0 on the integration interval");
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w / v;
  }
  return sum * h / 3.0;
}

enum class XiCoordinate { x, t };

// xi = (2 omega1 / alpha) exp(alpha t) = (2 omega1 / alpha) x.
inline double xi_of(double point, XiCoordinate coord, const MorseParams &p) {
  const double scale = 2.0 * p.omega1() / p.alpha();
  if (coord == XiCoordinate::x) {
    if (!(point > 0.0)) throw domain_error("xi_of: x must be > 0");
    return scale * point;
  }
  return scale * std::exp(p.alpha() * point);
}

// x-abscissae e^{alpha t_i} of a t-grid.
inline Grid x_image(const Grid &tgrid, double alpha) {
  tgrid.require(Coordinate::t, "x_image");
  std::vector<double> xs(tgrid.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = t_to_x(tgrid[i], alpha);
  return Grid::mapped(Coordinate::x, std::move(xs));
}

/// psi(x_i) = Phi(t_i) / sqrt(v_f(x_i)) at x_i = exp(alpha t_i). The result
/// lives on the mapped (non-uniform) x-grid; no interpolation is done.
template <typename T>
Field<T> phi_to_psi(const Field<T> &phi, const MorseParams &p) {
  phi.grid().require(Coordinate::t, "phi_to_psi");
  Grid xg = x_image(phi.grid(), p.alpha());
  std::vector<T> v(phi.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = phi[i] / std::sqrt(fermi_velocity(xg[i], p));
  return Field<T>(std::move(xg), std::move(v));
}

template <typename T>
Field<T> psi_to_phi(const Field<T> &psi, const MorseParams &p) {
  psi.grid().require(Coordinate::x, "psi_to_phi");
  std::vector<double> ts(psi.size());
  std::vector<T> v(psi.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ts[i] = x_to_t(psi.abscissa(i), p.alpha());
    v[i] = psi[i] * std::sqrt(fermi_velocity(psi.abscissa(i), p));
  }
  return Field<T>(Grid::mapped(Coordinate::t, std::move(ts)), std::move(v));
}

} // namespace pdmdirac
