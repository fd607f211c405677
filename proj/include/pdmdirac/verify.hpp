#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/finite_difference.hpp"
#include "pdmdirac/format.hpp"
#include "pdmdirac/grid.hpp"
#include "pdmdirac/model.hpp"
#include "pdmdirac/morse.hpp"
#include "pdmdirac/numerics.hpp"
#include "pdmdirac/transform.hpp"

namespace pdmdirac {

// ---------------------------------------------------------------------------
// Grid specification and tolerance table
// ---------------------------------------------------------------------------

/// Truncated t-domain used by every oracle, plus the x-grids derived from it.
struct GridSpec {
  double t_min = -80.0;
  double t_max = 10.0;
  std::size_t n = 16384;

  double spacing() const { return (t_max - t_min) / static_cast<double>(n - 1); }

  Grid t_grid() const { return Grid::uniform(Coordinate::t, t_min, t_max, n); }

  std::size_t x_points() const { return n % 2 == 0 ? n + 1 : n; }

  // Right end: image of t_max, cut where e^{-xi/2} has long underflowed.
  double x_hi(const MorseParams &p) const {
    const double decay = p.alpha() / p.omega1() * 60.0 + 4.0 * p.omega0() / p.omega1();
    return std::min(std::exp(p.alpha() * t_max), decay);
  }

  double x_lo(const MorseParams &p) const { return std::max(std::exp(p.alpha() * t_min), 1e-3 * x_hi(p)); }

  // Uniform x-grid for finite-difference residuals of the x-space operators.
  Grid x_grid(const MorseParams &p) const { return Grid::uniform(Coordinate::x, x_lo(p), x_hi(p), x_points()); }

  // Uniform x-grid bounded away from the origin for the effective-potential check.
  Grid effective_grid(const MorseParams &p) const {
    return Grid::uniform(Coordinate::x, std::max(x_lo(p), 0.1 * x_hi(p)), x_hi(p), x_points());
  }

  friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/// Every tolerance used by the verification suite. Discretisation-limited
/// entries are stated for the reference spacing and rescale by (h/h_ref)^2.
struct Tolerances {
  static constexpr double reference_spacing = 90.0 / 16383.0;

  double spectrum = 1e-3;
  double isospectral = 2e-3;
  double zero_mode = 1e-6;
  double intertwining = 5e-4;
  double factorization = 5e-4;
  double x_operator = 1e-4;
  double dirac = 1e-4;
  double gram = 1e-6;
  double norm_preservation = 1e-8;
  double effective_shift = 1e-6;

  // Not grid-dependent.
  double ode_residual = 1e-6;        // analytic derivatives
  double operator_equivalence = 1e-8; // rounding-limited
  double energy_identity = 1e-14;
  double zero_mode_lower = 1e-14;
  double symmetry = 1e-12;
  double no_zero_mode_floor = 0.1;

  static Tolerances for_grid(const GridSpec &spec) {
    Tolerances t;
    const double r = spec.spacing() / reference_spacing;
    const double s = r * r;
    for (double *v : {&t.spectrum, &t.isospectral, &t.zero_mode, &t.intertwining, &t.factorization, &t.x_operator,
                      &t.dirac, &t.gram, &t.norm_preservation, &t.effective_shift})
      *v *= s;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

enum class CheckKind { at_most, at_least, informational };

inline std::string_view to_string(CheckKind k) {
  switch (k) {
  case CheckKind::at_most: return "at_most";
  case CheckKind::at_least: return "at_least";
  case CheckKind::informational: return "informational";
  }
  return "?";
}

struct Check {
  std::string name;
  double value;
  double tolerance; // +inf for informational records
  bool passed;
  std::string detail;
  CheckKind kind = CheckKind::at_most;

  friend bool operator==(const Check &, const Check &) = default;
};

inline Check make_check(std::string name, double value, double tolerance, std::string detail = {},
                        CheckKind kind = CheckKind::at_most) {
  bool passed = true;
  if (kind == CheckKind::at_most) passed = value <= tolerance;
  else if (kind == CheckKind::at_least) passed = value >= tolerance;
  return {std::move(name), value, tolerance, passed, std::move(detail), kind};
}

inline Check make_info(std::string name, double value, std::string detail) {
  return {std::move(name), value, std::numeric_limits<double>::infinity(), true, std::move(detail),
          CheckKind::informational};
}

struct VerificationReport {
  std::vector<Check> checks;
  MorseParams params;
  GridSpec grid;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check &c) { return c.kind == CheckKind::informational || c.passed; });
  }

  friend bool operator==(const VerificationReport &, const VerificationReport &) = default;
};

// ---------------------------------------------------------------------------
// Oracle helpers
// ---------------------------------------------------------------------------

inline constexpr std::size_t edge_points = 4; // excluded at each end for "interior" norms

template <typename T>
double interior_max_abs(std::span<const T> v, std::size_t edge = edge_points) {
  double m = 0.0;
  for (std::size_t i = edge; i + edge < v.size(); ++i) m = std::max(m, static_cast<double>(std::abs(v[i])));
  return m;
}

template <typename T>
double interior_max_diff(std::span<const T> a, std::span<const T> b, std::size_t edge = edge_points) {
  double m = 0.0;
  for (std::size_t i = edge; i + edge < a.size(); ++i) m = std::max(m, static_cast<double>(std::abs(a[i] - b[i])));
  return m;
}

/// Morse well omega0^2 + omega1^2 s^2 - 2 omega1 c s (s = e^{alpha t}) on a
/// t-grid. c = omega0 + alpha/2 is V+ (upper component), c = omega0 - alpha/2 is V-.
inline ScalarField morse_potential_field(const Grid &tgrid, double coupling, const MorseParams &p) {
  tgrid.require(Coordinate::t, "morse_potential_field");
  return ScalarField::sample(tgrid, [&](double t) {
    const double s = std::exp(p.alpha() * t);
    return p.omega0() * p.omega0() + p.omega1() * p.omega1() * s * s - 2.0 * p.omega1() * coupling * s;
  });
}

enum class Sector { upper, lower };

// Schroedinger potential of sector +-, i.e. V+- - lambda (lambda cancels).
inline ScalarField partner_potential_field(const Grid &tgrid, Sector sector, const MorseParams &p) {
  tgrid.require(Coordinate::t, "partner_potential_field");
  return ScalarField::sample(tgrid, [&](double t) {
    const auto v = partner_potentials(t, PartnerCoordinate::t, p);
    return (sector == Sector::upper ? v.vplus : v.vminus) - p.lambda_shift();
  });
}

/// Numeric spectrum of the upper-sector operator: one entry per closed-form
/// bound level (at least one).
inline Spectrum numeric_spectrum(const MorseParams &p, const GridSpec &spec) {
  const Grid tg = spec.t_grid();
  const auto op = hamiltonian_t(partner_potential_field(tg, Sector::upper, p));
  const auto pairs = eigen_lowest(op, static_cast<std::size_t>(std::max(1, level_count(p))));
  Spectrum s{p, {}, Provenance::numeric};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int n = static_cast<int>(k);
    s.levels.push_back({n, level_kappa(n, p), pairs[k].value, std::sqrt(std::max(pairs[k].value + 0.25, 0.0))});
  }
  return s;
}

inline int sign_changes(std::span<const double> v, double relative_floor = 1e-8) {
  double peak = 0.0;
  for (double e : v) peak = std::max(peak, std::abs(e));
  int changes = 0, last = 0;
  for (double e : v) {
    if (std::abs(e) <= relative_floor * peak) continue;
    const int s = e > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

enum class SignConvention {
  upper_component, // V+ carries omega0 + alpha/2 (zero mode present)
  flipped          // omega0 - alpha/2 used as V+, the rejected reading
};

/// Numeric eigenvalues of V+ against the closed-form k^2_n, plus the count of
/// discrete levels below omega0^2.
inline std::vector<Check> verify_spectrum(const MorseParams &p, const GridSpec &spec,
                                          SignConvention convention = SignConvention::upper_component) {
  const auto tol = Tolerances::for_grid(spec);
  const Grid tg = spec.t_grid();
  const double coupling =
      convention == SignConvention::upper_component ? p.omega0() + 0.5 * p.alpha() : p.omega0() - 0.5 * p.alpha();
  const auto op = hamiltonian_t(morse_potential_field(tg, coupling, p));
  const auto exact = closed_form_spectrum(p);
  const auto pairs = eigen_lowest(op, exact.levels.size());
  const std::string tag = convention == SignConvention::flipped ? " (flipped convention)" : "";

  std::vector<Check> out;
  for (std::size_t k = 0; k < exact.levels.size(); ++k) {
    const auto &lv = exact.levels[k];
    out.push_back(make_check("spectrum.level[" + std::to_string(lv.n) + "]", std::abs(pairs[k].value - lv.ksq),
                             tol.spectrum,
                             "numeric " + format_double(pairs[k].value) + " vs closed form " + format_double(lv.ksq) + tag));
  }
  const auto below = op.count_below(p.omega0() * p.omega0());
  out.push_back(make_check("spectrum.bound_level_count",
                           std::abs(static_cast<double>(below) - static_cast<double>(exact.levels.size())), 0.0,
                           std::to_string(below) + " eigenvalues below omega0^2, expected " +
                               std::to_string(exact.levels.size()) + tag));
  return out;
}

/// Closed-form wavefunctions: ODE residuals (analytic in t, finite
/// differences in x), deformed-operator equivalence, norm preservation
/// under phi_to_psi, Gram matrix and node counts.
inline std::vector<Check> verify_closed_forms(const MorseParams &p, const GridSpec &spec) {
  const auto tol = Tolerances::for_grid(spec);
  const Grid tg = spec.t_grid();
  const Grid xg = spec.x_grid(p);
  const int levels = level_count(p);
  std::vector<Check> out;

  // Analytic residual of -Phi'' + (V+ - k^2) Phi on the t-grid.
  for (int n = 0; n < levels; ++n) {
    const double ksq = level_ksq(n, p);
    double res = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < tg.size(); ++i) {
      const auto jet = upper_t_jet(n, tg[i], p);
      const double v = partner_from_s(std::exp(p.alpha() * tg[i]), p).vplus - p.lambda_shift();
      peak = std::max(peak, std::abs(jet.value));
      if (i >= edge_points && i + edge_points < tg.size()) res = std::max(res, std::abs(-jet.d2 + (v - ksq) * jet.value));
    }
    out.push_back(make_check("closed_form.t_ode_residual[" + std::to_string(n) + "]", res / peak, tol.ode_residual,
                             "analytic derivatives, sup-norm relative to max|Phi+|"));
  }

  // x-space operator applied to psi+.
  for (int n = 0; n < levels; ++n) {
    const auto psi = upper_wavefunction(n, p, xg).field;
    const auto hpsi = hamiltonian_x_action(psi, p);
    const double ksq = level_ksq(n, p);
    std::vector<double> r(psi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = hpsi[i] - ksq * psi[i];
    out.push_back(make_check("closed_form.x_operator_residual[" + std::to_string(n) + "]",
                             interior_max_abs<double>(r) / psi.max_abs(), tol.x_operator,
                             "finite differences on x in [" + format_double(xg.lo()) + ", " + format_double(xg.hi()) + "]"));
  }

  // Two realisations of the x-space operator on deterministic test fields.
  {
    const double len = xg.hi() - xg.lo();
    double worst = 0.0;
    for (const auto &f : bump_test_fields(xg, 20, len / 60.0, len / 20.0)) {
      const auto a = hamiltonian_x_action(f, p);
      const auto b = hamiltonian_x_action_deformed(f, p);
      worst = std::max(worst, interior_max_diff(a.values(), b.values()) / interior_max_abs(a.values()));
    }
    out.push_back(make_check("closed_form.operator_equivalence", worst, tol.operator_equivalence,
                             "max relative discrepancy over 20 test fields"));
  }

  // dt = dx / v_f: norms agree across the change of variables.
  {
    const auto phi = upper_wavefunction(0, p, tg).field;
    const auto psi = phi_to_psi(phi, p);
    const double nt = norm_squared(phi), nx = norm_squared(psi);
    out.push_back(make_check("closed_form.norm_preservation", std::abs(nx - nt), tol.norm_preservation,
                             "int |psi|^2 dx = " + format_double(nx) + ", int |Phi|^2 dt = " + format_double(nt)));
  }

  // Orthonormality and nodes.
  {
    std::vector<ScalarField> modes;
    for (int n = 0; n < levels; ++n) modes.push_back(upper_wavefunction(n, p, tg).field);
    double worst = 0.0;
    for (int a = 0; a < levels; ++a)
      for (int b = 0; b < levels; ++b)
        worst = std::max(worst, std::abs(inner_product(modes[a], modes[b]).real() - (a == b ? 1.0 : 0.0)));
    out.push_back(make_check("orthonormality.gram", worst, tol.gram, "max |G - I| over closed-form modes on the t-grid"));

    const auto pairs = eigen_lowest(hamiltonian_t(partner_potential_field(tg, Sector::upper, p)),
                                    static_cast<std::size_t>(levels));
    for (int n = 0; n < levels; ++n) {
      const int numeric = sign_changes(pairs[n].vector.values());
      const int closed = sign_changes(modes[n].values());
      out.push_back(make_check("orthonormality.nodes[" + std::to_string(n) + "]",
                               std::abs(numeric - n) + std::abs(closed - n), 0.0,
                               "numeric " + std::to_string(numeric) + ", closed form " + std::to_string(closed) +
                                   ", expected " + std::to_string(n)));
    }
  }
  return out;
}

/// Zero-mode annihilation, partner isospectrality, partner level count, and
/// the intertwining / factorisation identities on deterministic test fields.
inline std::vector<Check> verify_susy(const MorseParams &p, const GridSpec &spec) {
  const auto tol = Tolerances::for_grid(spec);
  const Grid tg = spec.t_grid();
  const int levels = level_count(p);
  const auto vplus = partner_potential_field(tg, Sector::upper, p);
  const auto vminus = partner_potential_field(tg, Sector::lower, p);
  std::vector<Check> out;

  {
    const auto phi0 = upper_wavefunction(0, p, tg).field;
    const auto a_phi = apply_ladder(phi0, LadderSign::minus, p);
    out.push_back(make_check("susy.zero_mode_annihilation", interior_max_abs(a_phi.values()) / phi0.max_abs(),
                             tol.zero_mode, "(-d/dt + W) Phi_0, sup-norm relative to max|Phi_0|"));
  }

  const auto hplus = hamiltonian_t(vplus);
  const auto hminus = hamiltonian_t(vminus);
  const auto plus_pairs = eigen_lowest(hplus, static_cast<std::size_t>(levels));
  const auto minus_pairs = eigen_lowest(hminus, static_cast<std::size_t>(levels));
  for (int k = 1; k < levels; ++k) {
    const double a = plus_pairs[k].value, b = minus_pairs[k - 1].value;
    out.push_back(make_check("susy.isospectral[" + std::to_string(k) + "]", std::abs(a - b), tol.isospectral,
                             "V+ level " + std::to_string(k) + " = " + format_double(a) + ", V- level " +
                                 std::to_string(k - 1) + " = " + format_double(b)));
  }
  out.push_back(make_check("susy.partner_lowest_level", minus_pairs[0].value, tol.isospectral,
                           "lowest V- eigenvalue " + format_double(minus_pairs[0].value) + " (no zero mode)",
                           CheckKind::at_least));
  const auto below = hminus.count_below(p.omega0() * p.omega0());
  out.push_back(make_check("susy.partner_bound_level_count",
                           std::abs(static_cast<double>(below) - static_cast<double>(levels - 1)), 0.0,
                           std::to_string(below) + " V- eigenvalues below omega0^2, expected " +
                               std::to_string(levels - 1)));

  const double len = tg.hi() - tg.lo();
  const auto fields = bump_test_fields(tg, 20, len / 180.0, len / 60.0);
  double inter = 0.0, fact = 0.0;
  for (const auto &f : fields) {
    const double scale = f.max_abs();
    // A = -d/dt + W annihilates the zero mode: A H+ = H- A and H+ = A^dagger A.
    const auto lhs = apply_ladder(hamiltonian_t_action(vplus, f), LadderSign::minus, p);
    const auto rhs = hamiltonian_t_action(vminus, apply_ladder(f, LadderSign::minus, p));
    inter = std::max(inter, interior_max_diff(lhs.values(), rhs.values()) / scale);
    const auto aa = apply_ladder(apply_ladder(f, LadderSign::minus, p), LadderSign::plus, p);
    const auto hf = hamiltonian_t_action(vplus, f);
    fact = std::max(fact, interior_max_diff(aa.values(), hf.values()) / scale);
  }
  out.push_back(make_check("susy.intertwining", inter, tol.intertwining, "max over 20 test fields of |A H+ f - H- A f| / |f|"));
  out.push_back(make_check("susy.factorization", fact, tol.factorization, "max over 20 test fields of |A^+ A f - H+ f| / |f|"));
  return out;
}

// ---------------------------------------------------------------------------
// Dirac spinors
// ---------------------------------------------------------------------------

struct Spinor {
  ComplexField upper;
  ComplexField lower;
  double energy;
  int level;

  double d_plus() const { return energy + rest_energy; }
  double d_minus() const { return energy - rest_energy; }
};

inline Spinor assemble_spinor(int n, const MorseParams &p, const Grid &g, Normalization mode = Normalization::component) {
  auto up = upper_wavefunction(n, p, g, mode);
  auto lo = lower_wavefunction_operator(n, p, g, mode);
  if (!(up.field.grid() == lo.field.grid())) throw grid_error("assemble_spinor: components on different grids");
  return {to_complex(up.field), std::move(lo.field), level_energy(n, p), n};
}

/// Residuals of the coupled first-order equations
///   (-i sqrt(v) d sqrt(v) - i W) psi- = D- psi+
///   (-i sqrt(v) d sqrt(v) + i W) psi+ = D+ psi-
/// on a uniform x-grid, and the identity E^2 - (m0 v0^2)^2 = k^2_n.
inline std::vector<Check> verify_dirac(const Spinor &s, const MorseParams &p,
                                       const Tolerances &tol = Tolerances{}) {
  const Grid &g = s.upper.grid();
  if (!(g == s.lower.grid())) throw grid_error("verify_dirac: spinor components on different grids");
  detail::require_positive_uniform_x(g, "verify_dirac");
  const double h = g.spacing();
  const std::size_t n = g.size();
  const std::complex<double> I(0.0, 1.0);

  // sqrt(v) (sqrt(v) f)' expanded as v f' + v' f / 2.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = fermi_velocity(g[i], p);
  const auto dv = fd::first_derivative<double>(v, h);
  auto sqrt_v_deriv = [&](const ComplexField &f) {
    auto d = fd::first_derivative<std::complex<double>>(f.values(), h);
    for (std::size_t i = 0; i < n; ++i) d[i] = v[i] * d[i] + 0.5 * dv[i] * f[i];
    return d;
  };
  const auto dl = sqrt_v_deriv(s.lower);
  const auto du = sqrt_v_deriv(s.upper);
  std::vector<std::complex<double>> r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = superpotential(g[i], p);
    r1[i] = -I * dl[i] - I * w * s.lower[i] - s.d_minus() * s.upper[i];
    r2[i] = -I * du[i] + I * w * s.upper[i] - s.d_plus() * s.lower[i];
  }
  const double scale = s.upper.max_abs() + s.lower.max_abs();
  const std::string lv = "[" + std::to_string(s.level) + "]";
  std::vector<Check> out;
  out.push_back(make_check("dirac.first_equation" + lv, interior_max_abs<std::complex<double>>(r1) / scale, tol.dirac,
                           "(-i D - i W) psi- - D- psi+, E = " + format_double(s.energy)));
  out.push_back(make_check("dirac.second_equation" + lv, interior_max_abs<std::complex<double>>(r2) / scale, tol.dirac,
                           "(-i D + i W) psi+ - D+ psi-, E = " + format_double(s.energy)));
  const double ksq = level_ksq(s.level, p);
  const double lhs = s.energy * s.energy - rest_energy * rest_energy;
  out.push_back(make_check("dirac.energy_identity" + lv, std::abs(lhs - ksq), tol.energy_identity,
                           "E^2 - 1/4 = " + format_double(lhs) + ", k^2 = " + format_double(ksq)));
  return out;
}

/// Operator-derived lower component against the printed closed form.
/// Informational except for the zero-mode annihilation of the operator form.
inline std::vector<Check> compare_lower_forms(int n, const MorseParams &p, const GridSpec &spec) {
  require_bound_level(n, p);
  const auto tol = Tolerances::for_grid(spec);
  const Grid xg = spec.x_grid(p);
  const auto up = upper_wavefunction(n, p, xg);
  const auto op = lower_wavefunction_operator(n, p, xg).field;
  const auto pa = lower_wavefunction_printed(n, p, xg).field;
  const std::string lv = "[" + std::to_string(n) + "]";
  std::vector<Check> out;

  const double peak = up.field.max_abs();
  const double op_amp = op.max_abs() / peak;
  const double pa_amp = pa.max_abs() / peak;
  if (n == 0) {
    out.push_back(make_check("lower_forms.operator_zero_mode", op_amp, tol.zero_mode_lower,
                             "operator-derived psi- at n = 0, max amplitude relative to max|psi+|"));
    out.push_back(make_info("lower_forms.printed_zero_mode", pa_amp,
                            "DISCREPANCY: printed closed form is nonzero at n = 0 (max amplitude relative to max|psi+| "
                            "= " + format_double(pa_amp) + ") while the operator form vanishes"));
  } else {
    const double overlap =
        std::abs(inner_product(op, pa)) / std::sqrt(norm_squared(op) * norm_squared(pa));
    out.push_back(make_info("lower_forms.overlap" + lv, overlap,
                            "normalised overlap |<psi-_operator, psi-_printed>| = " + format_double(overlap)));
    double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin, rsum = 0.0;
    std::size_t count = 0;
    const double floor = 1e-8 * op.max_abs();
    for (std::size_t i = 0; i < xg.size(); ++i) {
      if (std::abs(op[i]) <= floor) continue;
      const double r = pa[i].imag() / op[i].imag();
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      rsum += r;
      ++count;
    }
    const double mean = count ? rsum / static_cast<double>(count) : 0.0;
    out.push_back(make_info("lower_forms.ratio" + lv, count ? (rmax - rmin) / std::abs(mean) : 0.0,
                            "printed/operator ratio over " + std::to_string(count) + " points: min " +
                                format_double(rmin) + ", max " + format_double(rmax) + ", mean " + format_double(mean) +
                                " (value = relative spread; 0 would mean proportional)"));
  }
  out.push_back(make_info("lower_forms.denominators" + lv, upper_denominator(n, p) - printed_denominator(n, p),
                          "D+ = E + 1/2 = " + format_double(upper_denominator(n, p)) + ", printed E + 1/4 = " +
                              format_double(printed_denominator(n, p))));
  return out;
}

struct AmbiguityTriple {
  double eta = 0.0;
  double beta = 0.0;
  double gamma = -1.0;
};

/// BenDaniel-Duke identity, the constant shift -alpha^2 for the mass
/// 1/(2 alpha^2 x^2), and eta <-> gamma symmetry. A triple that violates the
/// constraint is reported as a failed check.
inline std::vector<Check> verify_effective_potential(const MorseParams &p, const GridSpec &spec,
                                                     AmbiguityTriple triple = {}) {
  const auto tol = Tolerances::for_grid(spec);
  const Grid xg = spec.effective_grid(p);
  const auto system = ScalarField::sample(xg, [&](double x) { return partner_potentials(x, PartnerCoordinate::x, p).vplus; });
  const auto mass = ScalarField::sample(xg, [&](double x) { return eval_profiles(x, p).mass; });
  std::vector<Check> out;

  {
    const auto veff = effective_potential(system, mass, AmbiguityParams::ben_daniel_duke());
    double diff = 0.0;
    for (std::size_t i = 0; i < xg.size(); ++i) diff = std::max(diff, std::abs(veff[i] - system[i]));
    out.push_back(make_check("effective.ben_daniel_duke", diff, 0.0, "max |V_eff - V| for (eta, beta, gamma) = (0, -1, 0)"));
  }

  std::optional<AmbiguityParams> amb;
  try {
    amb.emplace(triple.eta, triple.beta, triple.gamma);
  } catch (const parameter_error &e) {
    out.push_back(make_check("effective.ambiguity_constraint", std::abs(triple.eta + triple.beta + triple.gamma + 1.0),
                             1e-12, e.what()));
    return out;
  }

  const auto veff = effective_potential(system, mass, *amb);
  // Closed-form shift for m = c x^{-2}: m''/m^2 = 12 alpha^2, m'^2/m^3 = 8 alpha^2.
  const double a2 = p.alpha() * p.alpha();
  const double expected = amb->curvature_coefficient() * 12.0 * a2 + amb->gradient_coefficient() * 8.0 * a2;
  double err = 0.0;
  for (std::size_t i = edge_points; i + edge_points < xg.size(); ++i)
    err = std::max(err, std::abs(veff[i] - system[i] - expected));
  out.push_back(make_check("effective.shift", err, tol.effective_shift,
                           "interior |V_eff - V - (" + format_double(expected) + ")| for (eta, beta, gamma) = (" +
                               format_double(triple.eta) + ", " + format_double(triple.beta) + ", " +
                               format_double(triple.gamma) + ")"));

  const auto swapped = effective_potential(system, mass, amb->swapped());
  double sym = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < xg.size(); ++i) {
    sym = std::max(sym, std::abs(veff[i] - swapped[i]));
    scale = std::max(scale, std::abs(veff[i]));
  }
  out.push_back(make_check("effective.eta_gamma_symmetry", sym / scale, tol.symmetry,
                           "max |V_eff(eta, beta, gamma) - V_eff(gamma, beta, eta)| relative"));
  return out;
}

// ---------------------------------------------------------------------------
// Full suite
// ---------------------------------------------------------------------------

enum class Suite { all, spectrum, susy, dirac, effective };

inline VerificationReport run_verification(const MorseParams &p, const GridSpec &spec, Suite suite = Suite::all) {
  VerificationReport report{{}, p, spec};
  auto append = [&](std::vector<Check> c) {
    for (auto &e : c) report.checks.push_back(std::move(e));
  };
  const bool all = suite == Suite::all;
  if (all || suite == Suite::spectrum) {
    append(verify_spectrum(p, spec));
    append(verify_closed_forms(p, spec));
  }
  if (all || suite == Suite::susy) append(verify_susy(p, spec));
  if (all || suite == Suite::dirac) {
    const auto tol = Tolerances::for_grid(spec);
    const Grid xg = spec.x_grid(p);
    for (int n = 0; n < level_count(p); ++n) append(verify_dirac(assemble_spinor(n, p, xg), p, tol));
    for (int n = 0; n < level_count(p); ++n) append(compare_lower_forms(n, p, spec));
  }
  if (all || suite == Suite::effective) append(verify_effective_potential(p, spec));
  return report;
}

} // namespace pdmdirac
