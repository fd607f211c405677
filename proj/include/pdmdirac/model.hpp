#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/finite_difference.hpp"
#include "pdmdirac/grid.hpp"

namespace pdmdirac {

// Natural units: hbar = 1 and the constancy product m0 v0^2 = 1/2.
inline constexpr double rest_energy = 0.5;

/// Parameters of the Morse system: superpotential W(x) = omega0 - omega1 x and
/// Fermi velocity v_f(x) = alpha x on x > 0. lambda_shift is the SUSY cut-off
/// energy added to both partner potentials; it cancels in every Hamiltonian.
class MorseParams {
public:
  MorseParams(double omega0, double omega1, double alpha, double lambda_shift = 0.0)
      : omega0_(omega0), omega1_(omega1), alpha_(alpha), lambda_(lambda_shift) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw parameter_error("omega0 must be a positive finite number");
    if (!(omega1 > 0.0) || !std::isfinite(omega1)) throw parameter_error("omega1 must be a positive finite number");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw parameter_error("alpha must be a positive finite number");
    if (!std::isfinite(lambda_shift)) throw parameter_error("lambda_shift must be finite");
  }

  double omega0() const { return omega0_; }
  double omega1() const { return omega1_; }
  double alpha() const { return alpha_; }
  double lambda_shift() const { return lambda_; }
  static constexpr double constancy_product() { return rest_energy; }

  friend bool operator==(const MorseParams &, const MorseParams &) = default;

private:
  double omega0_;
  double omega1_;
  double alpha_;
  double lambda_;
};

/// Ordering ambiguity of the von Roos kinetic operator; eta + beta + gamma = -1.
class AmbiguityParams {
public:
  AmbiguityParams(double eta, double beta, double gamma) : eta_(eta), beta_(beta), gamma_(gamma) {
    if (!std::isfinite(eta) || !std::isfinite(beta) || !std::isfinite(gamma))
      throw parameter_error("ambiguity parameters must be finite");
    if (std::abs(eta + beta + gamma + 1.0) > 1e-12)
      throw parameter_error("ambiguity parameters must satisfy eta + beta + gamma = -1");
  }

  static AmbiguityParams ben_daniel_duke() { return {0.0, -1.0, 0.0}; }

  double eta() const { return eta_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  AmbiguityParams swapped() const { return {gamma_, beta_, eta_}; }

  // Coefficients of m''/m^2 and m'^2/m^3 in the effective potential.
  double curvature_coefficient() const { return 0.25 * (beta_ + 1.0); }
  double gradient_coefficient() const { return -0.5 * (eta_ * (eta_ + beta_ + 1.0) + beta_ + 1.0); }

private:
  double eta_;
  double beta_;
  double gamma_;
};

struct ProfileSample {
  double w;
  double vf;
  double mass; // +inf for x <= 0 (mass undefined there)

  bool mass_defined() const { return std::isfinite(mass); }
};

inline ProfileSample eval_profiles(double x, const MorseParams &p) {
  if (!(x > 0.0)) return {0.0, 0.0, std::numeric_limits<double>::infinity()};
  const double vf = p.alpha() * x;
  return {p.omega0() - p.omega1() * x, vf, 1.0 / (2.0 * vf * vf)};
}

inline double superpotential(double x, const MorseParams &p) { return eval_profiles(x, p).w; }
inline double fermi_velocity(double x, const MorseParams &p) { return eval_profiles(x, p).vf; }

// W expressed in t = ln(x)/alpha.
inline double superpotential_t(double t, const MorseParams &p) {
  return p.omega0() - p.omega1() * std::exp(p.alpha() * t);
}

inline double constancy_product(const MorseParams &p, std::span<const double> probes) {
  if (probes.empty()) throw domain_error("constancy_product: no probe points");
  double first = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!(probes[i] > 0.0)) throw domain_error("constancy_product: probe points must be > 0");
    const auto s = eval_profiles(probes[i], p);
    const double c = s.mass * s.vf * s.vf;
    if (i == 0) {
      first = c;
    } else if (std::abs(c - first) > 1e-14 * std::abs(first)) {
      throw domain_error("constancy_product: m v_f^2 differs between probe points");
    }
  }
  return first;
}

inline double constancy_product(const MorseParams &p, std::initializer_list<double> probes) {
  return constancy_product(p, std::span<const double>(probes.begin(), probes.size()));
}

/// Effective potential of the position-dependent-mass Schroedinger operator,
/// V + (beta+1)/4 m''/m^2 - (eta(eta+beta+1)+beta+1)/2 m'^2/m^3, with m' and
/// m'' from second-order finite differences. Returns the system potential
/// unchanged when both coefficients vanish (BenDaniel-Duke ordering).
inline ScalarField effective_potential(const ScalarField &system_potential, const ScalarField &mass,
                                       const AmbiguityParams &amb) {
  require_same_grid(system_potential, mass, "effective_potential");
  const Grid &g = mass.grid();
  g.require_uniform("effective_potential");
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (!(mass[i] > 0.0) || !std::isfinite(mass[i]))
      throw domain_error("effective_potential: mass must be positive and finite on the grid");

  const double c2 = amb.curvature_coefficient();
  const double c1 = amb.gradient_coefficient();
  if (c1 == 0.0 && c2 == 0.0) return system_potential;

  const double h = g.spacing();
  const auto dm = fd::first_derivative(mass.values(), h);
  const auto d2m = fd::second_derivative(mass.values(), h);
  std::vector<double> out(mass.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double m = mass[i];
    out[i] = system_potential[i] + c2 * d2m[i] / (m * m) + c1 * dm[i] * dm[i] / (m * m * m);
  }
  return ScalarField(g, std::move(out));
}

struct PartnerPair {
  double vplus;
  double vminus;
};

enum class PartnerCoordinate { x, t };

// V+- = W^2 +- v_f W' + lambda, written with s = x or s = exp(alpha t):
// omega0^2 + omega1^2 s^2 - 2 omega1 (omega0 +- alpha/2) s. V+ is the
// potential seen by the upper spinor component and carries the zero mode.
inline PartnerPair partner_from_s(double s, const MorseParams &p) {
  const double w0 = p.omega0(), w1 = p.omega1(), a = p.alpha();
  const double base = w0 * w0 + w1 * w1 * s * s + p.lambda_shift();
  return {base - 2.0 * w1 * (w0 + 0.5 * a) * s, base - 2.0 * w1 * (w0 - 0.5 * a) * s};
}

inline PartnerPair partner_potentials(double point, PartnerCoordinate coord, const MorseParams &p) {
  if (coord == PartnerCoordinate::x) {
    if (!(point > 0.0)) throw domain_error("partner_potentials: x must be > 0");
    return partner_from_s(point, p);
  }
  return partner_from_s(std::exp(p.alpha() * point), p);
}

} // namespace pdmdirac
