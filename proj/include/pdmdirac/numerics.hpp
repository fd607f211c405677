#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/finite_difference.hpp"
#include "pdmdirac/grid.hpp"
#include "pdmdirac/model.hpp"

namespace pdmdirac {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Integral of the sampled field over its grid coordinate.
///
/// Uniform grids use composite Simpson; with an even number of points the
/// last interval is closed with the trapezoid rule. Mapped grids use the
/// irregular-spacing Simpson rule on consecutive interval pairs (exact for
/// quadratics), again with a trapezoid on a trailing odd interval.
template <typename T>
T quadrature(const Field<T> &f) {
  const Grid &g = f.grid();
  const std::size_t n = f.size();
  const std::size_t pairs_end = (n % 2 == 1) ? n - 1 : n - 2; // last index covered by Simpson
  T sum{};
  if (g.is_uniform()) {
    const double h = g.spacing();
    T s = f[0] + f[pairs_end];
    for (std::size_t i = 1; i < pairs_end; ++i) s += f[i] * (i % 2 == 1 ? 4.0 : 2.0);
    sum = s * (h / 3.0);
    if (pairs_end != n - 1) sum += (f[n - 2] + f[n - 1]) * (0.5 * h);
    return sum;
  }
  for (std::size_t i = 0; i + 2 <= pairs_end; i += 2) {
    const double h0 = g[i + 1] - g[i];
    const double h1 = g[i + 2] - g[i + 1];
    const double hs = h0 + h1;
    sum += (f[i] * (2.0 - h1 / h0) + f[i + 1] * (hs * hs / (h0 * h1)) + f[i + 2] * (2.0 - h0 / h1)) * (hs / 6.0);
  }
  if (pairs_end != n - 1) sum += (f[n - 2] + f[n - 1]) * (0.5 * (g[n - 1] - g[n - 2]));
  return sum;
}

template <typename T>
double norm_squared(const Field<T> &f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::norm(std::complex<double>(f[i]));
  return quadrature(ScalarField(f.grid(), std::move(v)));
}

// <a, b> = integral of conj(a) b.
template <typename T>
std::complex<double> inner_product(const Field<T> &a, const Field<T> &b) {
  require_same_grid(a, b, "inner_product");
  std::vector<std::complex<double>> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::conj(std::complex<double>(a[i])) * std::complex<double>(b[i]);
  return quadrature(ComplexField(a.grid(), std::move(v)));
}

// ---------------------------------------------------------------------------
// Tridiagonal operators and the Sturm-bisection eigensolver
// ---------------------------------------------------------------------------

/// Symmetric tridiagonal matrix. With Dirichlet boundaries the unknowns are the
/// interior grid points (dimension = grid.size() - 2) and eigenvectors are
/// padded with zero boundary values.
class TridiagonalOperator {
public:
  enum class Boundary { none, dirichlet };

  TridiagonalOperator(std::vector<double> diag, std::vector<double> offdiag, Grid grid,
                      Boundary boundary = Boundary::none)
      : diag_(std::move(diag)), offdiag_(std::move(offdiag)), grid_(std::move(grid)), boundary_(boundary) {
    if (diag_.empty() || offdiag_.size() + 1 != diag_.size())
      throw grid_error("tridiagonal operator: off-diagonal must have dimension - 1 entries");
    const std::size_t expect = diag_.size() + (boundary_ == Boundary::dirichlet ? 2 : 0);
    if (grid_.size() != expect) throw grid_error("tridiagonal operator: grid does not match dimension");
  }

  std::size_t dimension() const { return diag_.size(); }
  std::span<const double> diag() const { return diag_; }
  std::span<const double> offdiag() const { return offdiag_; }
  const Grid &grid() const { return grid_; }
  Boundary boundary() const { return boundary_; }

  std::vector<double> apply(std::span<const double> v) const {
    const std::size_t n = dimension();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag_[i] * v[i];
      if (i > 0) s += offdiag_[i - 1] * v[i - 1];
      if (i + 1 < n) s += offdiag_[i] * v[i + 1];
      out[i] = s;
    }
    return out;
  }

  // Number of eigenvalues strictly below lambda (Sturm sequence / LDL^T inertia).
  std::size_t count_below(double lambda) const {
    const std::size_t n = dimension();
    const double floor = pivmin();
    std::size_t count = 0;
    double q = diag_[0] - lambda;
    if (std::abs(q) < floor) q = -floor;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
      q = diag_[i] - lambda - offdiag_[i - 1] * offdiag_[i - 1] / q;
      if (std::abs(q) < floor) q = -floor;
      if (q < 0.0) ++count;
    }
    return count;
  }

  // Gershgorin enclosure of the spectrum.
  std::pair<double, double> gershgorin() const {
    const std::size_t n = dimension();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(offdiag_[i - 1]);
      if (i + 1 < n) r += std::abs(offdiag_[i]);
      lo = std::min(lo, diag_[i] - r);
      hi = std::max(hi, diag_[i] + r);
    }
    return {lo, hi};
  }

  double norm_inf() const {
    auto [lo, hi] = gershgorin();
    return std::max(std::abs(lo), std::abs(hi));
  }

private:
  double pivmin() const {
    double emax = 1.0;
    for (double e : offdiag_) emax = std::max(emax, e * e);
    return std::numeric_limits<double>::min() * emax;
  }

  std::vector<double> diag_;
  std::vector<double> offdiag_;
  Grid grid_;
  Boundary boundary_;
};

/// -d^2/dt^2 + V with homogeneous Dirichlet conditions on a uniform grid:
/// diag_i = 2/h^2 + V_i, offdiag = -1/h^2 over the interior points.
inline TridiagonalOperator hamiltonian_t(const ScalarField &potential) {
  const Grid &g = potential.grid();
  g.require_uniform("hamiltonian_t");
  const double h = g.spacing();
  const std::size_t n = g.size() - 2;
  std::vector<double> diag(n), off(n - 1, -1.0 / (h * h));
  for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 / (h * h) + potential[i + 1];
  return TridiagonalOperator(std::move(diag), std::move(off), g, TridiagonalOperator::Boundary::dirichlet);
}

// Action of the same stencil on a sampled field (boundary rows set to zero).
template <typename T>
Field<T> hamiltonian_t_action(const ScalarField &potential, const Field<T> &f) {
  if (!(potential.grid() == f.grid())) throw grid_error("hamiltonian_t_action: fields live on different grids");
  const Grid &g = f.grid();
  g.require_uniform("hamiltonian_t_action");
  const double h2 = g.spacing() * g.spacing();
  std::vector<T> out(f.size(), T{});
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    out[i] = -(f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2 + potential[i] * f[i];
  return Field<T>(g, std::move(out));
}

struct EigenPair {
  double value;
  ScalarField vector; // unit L2 norm under the grid measure, zero Dirichlet ends
  double residual;    // ||H v - value v||_2 / ||v||_2 on the unknowns
};

namespace detail {

// LU factorisation with partial pivoting of (T - shift) and solve, following
// the LAPACK gttrf/gttrs layout. Zero pivots are perturbed to eps * ||T||.
class ShiftedTridiagonalLU {
public:
  ShiftedTridiagonalLU(const TridiagonalOperator &op, double shift)
      : n_(op.dimension()), dl_(op.offdiag().begin(), op.offdiag().end()), d_(n_), du_(dl_), du2_(n_, 0.0),
        swap_(n_, false) {
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(op.norm_inf(), 1.0);
    for (std::size_t i = 0; i < n_; ++i) d_[i] = op.diag()[i] - shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    if (d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
  }

  void solve(std::vector<double> &b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      }
    }
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    if (n_ >= 3)
      for (std::size_t k = n_ - 2; k-- > 0;) b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
  }

private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swap_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Uniform deviate in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace detail

struct EigenOptions {
  double tolerance = 1e-12;     // absolute bisection width on lambda
  int max_bisection_steps = 400;
  int max_inverse_iterations = 10;
  double residual_target = 1e-8; // relative to ||v||_2
};

/// The `count` smallest eigenpairs of `op`, in increasing order. Eigenvalues
/// by Sturm-count bisection, eigenvectors by inverse iteration at the
/// bisected shift with re-orthogonalisation inside clusters.
inline std::vector<EigenPair> eigen_lowest(const TridiagonalOperator &op, std::size_t count,
                                           const EigenOptions &opt = {}) {
  const std::size_t n = op.dimension();
  if (count < 1) throw domain_error("eigen_lowest: count must be >= 1");
  if (count > std::max<std::size_t>(1, op.grid().size() / 4))
    throw domain_error("eigen_lowest: count exceeds a quarter of the grid size");

  auto [glo, ghi] = op.gershgorin();
  const double span = std::max(ghi - glo, 1.0);
  glo -= 1e-10 * span;
  ghi += 1e-10 * span;

  std::vector<double> values(count);
  double lower = glo;
  for (std::size_t j = 0; j < count; ++j) {
    double lo = lower, hi = ghi;
    int steps = 0;
    while (hi - lo > opt.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break; // interval at floating-point resolution
      if (op.count_below(mid) > j) hi = mid;
      else lo = mid;
      if (++steps > opt.max_bisection_steps) {
        std::ostringstream msg;
        msg << "eigen_lowest: bisection did not converge for eigenvalue " << j << " (bracket [" << lo << ", " << hi
            << "], width " << hi - lo << ", tolerance " << opt.tolerance << ")";
        throw solver_error(msg.str());
      }
    }
    values[j] = 0.5 * (lo + hi);
    lower = lo;
  }

  const double cluster = 1e-3 * op.norm_inf();
  std::vector<std::vector<double>> vectors;
  std::vector<EigenPair> out;
  std::mt19937_64 rng(0x5eed5eedULL);
  for (std::size_t j = 0; j < count; ++j) {
    const detail::ShiftedTridiagonalLU lu(op, values[j]);
    std::vector<double> v(n);
    for (auto &e : v) e = 2.0 * detail::unit_uniform(rng) - 1.0;
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_inverse_iterations; ++it) {
      lu.solve(v);
      for (std::size_t k = 0; k < vectors.size(); ++k) {
        if (std::abs(values[k] - values[j]) > cluster) continue;
        const double c = detail::dot(v, vectors[k]);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * vectors[k][i];
      }
      const double nv = std::sqrt(detail::dot(v, v));
      for (auto &e : v) e /= nv;
      const auto hv = op.apply(v);
      double r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) r2 += (hv[i] - values[j] * v[i]) * (hv[i] - values[j] * v[i]);
      residual = std::sqrt(r2);
      if (residual <= opt.residual_target && it >= 1) break;
    }
    if (!(residual <= opt.residual_target)) {
      std::ostringstream msg;
      msg << "eigen_lowest: inverse iteration residual " << residual << " above target " << opt.residual_target
          << " for eigenvalue " << j << " = " << values[j];
      throw solver_error(msg.str());
    }

    // Sign: first sample above 1e-3 of the peak is positive.
    double peak = 0.0;
    for (double e : v) peak = std::max(peak, std::abs(e));
    for (double e : v) {
      if (std::abs(e) >= 1e-3 * peak) {
        if (e < 0.0)
          for (auto &x : v) x = -x;
        break;
      }
    }
    vectors.push_back(v);

    std::vector<double> full(op.grid().size(), 0.0);
    const std::size_t offset = op.boundary() == TridiagonalOperator::Boundary::dirichlet ? 1 : 0;
    std::copy(v.begin(), v.end(), full.begin() + static_cast<std::ptrdiff_t>(offset));
    ScalarField field(op.grid(), std::move(full));
    const double norm = std::sqrt(norm_squared(field));
    out.push_back({values[j], field.scaled(1.0 / norm), residual});
  }
  return out;
}

// ---------------------------------------------------------------------------
// x-space operators and the first-order ladder
// ---------------------------------------------------------------------------

namespace detail {
inline void require_positive_uniform_x(const Grid &g, const char *who) {
  g.require(Coordinate::x, who);
  g.require_uniform(who);
  if (!(g.lo() > 0.0)) throw domain_error(std::string(who) + ": x-grid must lie in x > 0");
}
} // namespace detail

/// Upper-component x-space operator
///   -v^2 psi'' - (v^2)' psi' + [W^2 - v'^2/4 - v v''/2 + v W'] psi
/// with v = alpha x, W = omega0 - omega1 x and analytic profile derivatives.
template <typename T>
Field<T> hamiltonian_x_action(const Field<T> &psi, const MorseParams &p) {
  const Grid &g = psi.grid();
  detail::require_positive_uniform_x(g, "hamiltonian_x_action");
  const double h = g.spacing();
  const auto d1 = fd::first_derivative(psi.values(), h);
  const auto d2 = fd::second_derivative(psi.values(), h);
  const double a = p.alpha();
  std::vector<T> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = g[i];
    const double v = a * x, dv = a, d2v = 0.0;
    const double w = p.omega0() - p.omega1() * x, dw = -p.omega1();
    const double dv2 = 2.0 * a * a * x;
    const double pot = w * w - 0.25 * dv * dv - 0.5 * v * d2v + v * dw;
    out[i] = -(v * v) * d2[i] - dv2 * d1[i] + pot * psi[i];
  }
  return Field<T>(g, std::move(out));
}

/// Same operator in deformed form -(sqrt(f) d/dx sqrt(f))^2 + W^2 + f W', with
/// the deforming function f = 1/sqrt(2 m) built from the mass profile and its
/// derivatives (and W') taken by finite differences of the sampled profiles.
template <typename T>
Field<T> hamiltonian_x_action_deformed(const Field<T> &psi, const MorseParams &p) {
  const Grid &g = psi.grid();
  detail::require_positive_uniform_x(g, "hamiltonian_x_action_deformed");
  const double h = g.spacing();
  std::vector<double> f(g.size()), w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto s = eval_profiles(g[i], p);
    f[i] = 1.0 / std::sqrt(2.0 * s.mass);
    w[i] = s.w;
  }
  const auto df = fd::first_derivative<double>(f, h);
  const auto d2f = fd::second_derivative<double>(f, h);
  const auto dw = fd::first_derivative<double>(w, h);
  const auto d1 = fd::first_derivative(psi.values(), h);
  const auto d2 = fd::second_derivative(psi.values(), h);
  std::vector<T> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double kinetic0 = -(0.25 * df[i] * df[i] + 0.5 * f[i] * d2f[i]);
    const double pot = w[i] * w[i] + f[i] * dw[i];
    out[i] = -(f[i] * f[i]) * d2[i] - 2.0 * f[i] * df[i] * d1[i] + (kinetic0 + pot) * psi[i];
  }
  return Field<T>(g, std::move(out));
}

enum class LadderSign { plus, minus };

/// (+-d/dt + W(x(t))) applied to a field on a uniform t-grid; fourth-order
/// central differences in the interior.
template <typename T>
Field<T> apply_ladder(const Field<T> &field, LadderSign sign, const MorseParams &p) {
  const Grid &g = field.grid();
  g.require(Coordinate::t, "apply_ladder");
  g.require_uniform("apply_ladder");
  const auto d = fd::first_derivative_4th(field.values(), g.spacing());
  const double s = sign == LadderSign::plus ? 1.0 : -1.0;
  std::vector<T> out(field.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * d[i] + superpotential_t(g[i], p) * field[i];
  return Field<T>(g, std::move(out));
}

// ---------------------------------------------------------------------------
// Deterministic test fields
// ---------------------------------------------------------------------------

/// Superpositions of one to three Gaussian bumps with centres in the middle
/// 80% of the grid and widths in [min_width, max_width]; fixed seed.
inline std::vector<ScalarField> bump_test_fields(const Grid &g, std::size_t count, double min_width,
                                                 double max_width, std::uint64_t seed = 20240611ULL) {
  std::mt19937_64 rng(seed);
  const double length = g.hi() - g.lo();
  const double c_lo = g.lo() + 0.1 * length, c_hi = g.hi() - 0.1 * length;
  std::vector<ScalarField> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int bumps = 1 + static_cast<int>(detail::unit_uniform(rng) * 3.0);
    std::vector<double> c(bumps), w(bumps), a(bumps);
    for (int b = 0; b < bumps; ++b) {
      c[b] = c_lo + (c_hi - c_lo) * detail::unit_uniform(rng);
      w[b] = min_width + (max_width - min_width) * detail::unit_uniform(rng);
      a[b] = (0.5 + 0.5 * detail::unit_uniform(rng)) * (detail::unit_uniform(rng) < 0.5 ? -1.0 : 1.0);
    }
    out.push_back(ScalarField::sample(g, [&](double x) {
      double s = 0.0;
      for (int b = 0; b < bumps; ++b) {
        const double z = (x - c[b]) / w[b];
        s += a[b] * std::exp(-0.5 * z * z);
      }
      return s;
    }));
  }
  return out;
}

} // namespace pdmdirac
