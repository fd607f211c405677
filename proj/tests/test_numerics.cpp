#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdmdirac/morse.hpp"
#include "pdmdirac/numerics.hpp"

using namespace pdmdirac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const MorseParams reference{1.0, 1.0, 0.25};

Grid acceptance_t_grid() { return Grid::uniform(Coordinate::t, -80.0, 10.0, 16384); }

Grid acceptance_x_grid() {
  const double hi = 0.25 * 60.0 + 4.0;
  return Grid::uniform(Coordinate::x, 1e-3 * hi, hi, 16385);
}

ScalarField constant(const Grid &g, double c) {
  return ScalarField::sample(g, [c](double) { return c; });
}

ScalarField morse_plus(const Grid &tg) {
  return ScalarField::sample(tg, [](double t) { return partner_potentials(t, PartnerCoordinate::t, reference).vplus; });
}

ScalarField morse_minus(const Grid &tg) {
  return ScalarField::sample(tg, [](double t) { return partner_potentials(t, PartnerCoordinate::t, reference).vminus; });
}

double interior_max(const std::vector<double> &v, std::size_t edge = 4) {
  double m = 0.0;
  for (std::size_t i = edge; i + edge < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

} // namespace

// ---------------------------------------------------------------------------
// Grids and fields
// ---------------------------------------------------------------------------

TEST_CASE("uniform and mapped grids", "[numerics][grid]") {
  const Grid g = Grid::uniform(Coordinate::t, -1.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g.spacing() == 0.5);
  CHECK(g[0] == -1.0);
  CHECK(g[4] == 1.0);
  CHECK(g.is_uniform());
  CHECK_THROWS_AS(Grid::uniform(Coordinate::t, 0.0, 1.0, 4), grid_error);
  CHECK_THROWS_AS(Grid::uniform(Coordinate::t, 1.0, 1.0, 9), grid_error);
  CHECK_THROWS_AS(Grid::uniform(Coordinate::t, 0.0, INFINITY, 9), grid_error);

  const Grid m = Grid::mapped(Coordinate::x, {0.1, 0.2, 0.5, 0.9, 2.0});
  CHECK_FALSE(m.is_uniform());
  CHECK_THROWS_AS(m.spacing(), grid_error);
  CHECK_THROWS_AS(Grid::mapped(Coordinate::x, {0.1, 0.2, 0.2, 0.9, 2.0}), grid_error);
  CHECK_THROWS_AS(m.require(Coordinate::t, "test"), grid_error);

  CHECK_THROWS_AS(ScalarField(g, {1.0, 2.0}), grid_error);
  const auto f = ScalarField::sample(g, [](double x) { return -x; });
  CHECK(f.max_abs() == 1.0);
  CHECK(f.scaled(2.0)[0] == 2.0);
  CHECK(Grid::uniform(Coordinate::t, -1.0, 1.0, 5) == g);
  CHECK_FALSE(Grid::uniform(Coordinate::x, -1.0, 1.0, 5) == g);
}

TEST_CASE("finite differences are exact on low-degree polynomials", "[numerics][fd]") {
  const double h = 0.125;
  std::vector<double> x(17), quad(17), cubic(17), quartic(17);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = -1.0 + h * i;
    quad[i] = 3 * x[i] * x[i] - x[i] + 2;
    cubic[i] = x[i] * x[i] * x[i] - 2 * x[i] * x[i];
    quartic[i] = x[i] * x[i] * x[i] * x[i];
  }
  const auto d1 = fd::first_derivative<double>(quad, h);
  const auto d2 = fd::second_derivative<double>(cubic, h);
  const auto d4 = fd::first_derivative_4th<double>(quartic, h);
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE_THAT(d1[i], WithinAbs(6 * x[i] - 1, 1e-12));
    REQUIRE_THAT(d2[i], WithinAbs(6 * x[i] - 4, 1e-11));
    if (i >= 2 && i + 2 < x.size()) REQUIRE_THAT(d4[i], WithinAbs(4 * x[i] * x[i] * x[i], 1e-12));
  }
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

TEST_CASE("Simpson quadrature", "[numerics][quadrature]") {
  const Grid unit = Grid::uniform(Coordinate::x, 0.0, 1.0, 101);
  CHECK_THAT(quadrature(ScalarField::sample(unit, [](double x) { return x * x; })), WithinAbs(1.0 / 3.0, 1e-10));
  CHECK_THAT(quadrature(ScalarField::sample(unit, [](double x) { return x * x * x; })), WithinAbs(0.25, 1e-14));

  const Grid wide = Grid::uniform(Coordinate::t, -10.0, 10.0, 2001);
  CHECK_THAT(quadrature(ScalarField::sample(wide, [](double t) { return std::exp(-t * t); })),
             WithinAbs(std::sqrt(std::numbers::pi), 1e-10));
}

TEST_CASE("quadrature is linear", "[numerics][quadrature][property]") {
  const Grid g = Grid::uniform(Coordinate::t, -3.0, 2.0, 777);
  const auto f = ScalarField::sample(g, [](double t) { return std::sin(3 * t) + t; });
  const auto h = ScalarField::sample(g, [](double t) { return std::exp(-t * t) * 5.0; });
  const double a = 1.7, b = -0.4;
  std::vector<double> comb(g.size());
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * f[i] + b * h[i];
  CHECK_THAT(quadrature(ScalarField(g, comb)), WithinAbs(a * quadrature(f) + b * quadrature(h), 1e-13));
}

TEST_CASE("even point counts fall back to a trapezoid on the last panel", "[numerics][quadrature]") {
  const Grid g = Grid::uniform(Coordinate::x, 0.0, 2.0, 100);
  CHECK_THAT(quadrature(ScalarField::sample(g, [](double x) { return 3 * x + 1; })), WithinAbs(8.0, 1e-13));
  CHECK_THAT(quadrature(ScalarField::sample(g, [](double x) { return std::cos(x); })), WithinAbs(std::sin(2.0), 1e-6));
}

TEST_CASE("irregular Simpson on mapped grids", "[numerics][quadrature]") {
  std::vector<double> pts;
  for (int i = 0; i <= 200; ++i) pts.push_back(std::exp(0.01 * i) - 1.0);
  const Grid g = Grid::mapped(Coordinate::x, pts);
  const double b = pts.back();
  CHECK_THAT(quadrature(ScalarField::sample(g, [](double x) { return x * x - x; })),
             WithinAbs(b * b * b / 3 - b * b / 2, 1e-12));
  CHECK_THAT(quadrature(ScalarField::sample(g, [](double x) { return std::exp(-x); })), WithinAbs(1.0 - std::exp(-b), 1e-8));
}

TEST_CASE("inner product conjugates the left argument", "[numerics][quadrature]") {
  const Grid g = Grid::uniform(Coordinate::t, 0.0, 1.0, 11);
  const auto a = ComplexField::sample(g, [](double) { return std::complex<double>(0.0, 1.0); });
  const auto b = ComplexField::sample(g, [](double) { return std::complex<double>(1.0, 0.0); });
  const auto ip = inner_product(a, b);
  CHECK_THAT(ip.real(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(ip.imag(), WithinAbs(-1.0, 1e-14));
  CHECK_THAT(norm_squared(a), WithinAbs(1.0, 1e-14));
}

// ---------------------------------------------------------------------------
// Eigensolver
// ---------------------------------------------------------------------------

TEST_CASE("Dirichlet box spectrum", "[numerics][eigen]") {
  const Grid g = Grid::uniform(Coordinate::t, 0.0, std::numbers::pi, 2001);
  const auto pairs = eigen_lowest(hamiltonian_t(constant(g, 0.0)), 3);
  REQUIRE(pairs.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK_THAT(pairs[k].value, WithinRel((k + 1.0) * (k + 1.0), 1e-5));
}

TEST_CASE("a constant potential shifts the spectrum exactly", "[numerics][eigen]") {
  const Grid g = Grid::uniform(Coordinate::t, 0.0, std::numbers::pi, 401);
  const auto base = eigen_lowest(hamiltonian_t(constant(g, 0.0)), 5);
  const auto shifted = eigen_lowest(hamiltonian_t(constant(g, 2.5)), 5);
  for (int k = 0; k < 5; ++k) CHECK_THAT(shifted[k].value - base[k].value, WithinAbs(2.5, 1e-9));
}

TEST_CASE("harmonic oscillator spectrum", "[numerics][eigen]") {
  const Grid g = Grid::uniform(Coordinate::t, -12.0, 12.0, 8001);
  const auto pairs = eigen_lowest(hamiltonian_t(ScalarField::sample(g, [](double t) { return t * t; })), 3);
  for (int k = 0; k < 3; ++k) CHECK_THAT(pairs[k].value, WithinAbs(2.0 * k + 1.0, 1e-4));
}

TEST_CASE("second-order convergence under grid refinement", "[numerics][eigen][property]") {
  auto error = [](std::size_t intervals) {
    const Grid g = Grid::uniform(Coordinate::t, 0.0, std::numbers::pi, intervals + 1);
    return std::abs(eigen_lowest(hamiltonian_t(constant(g, 0.0)), 2)[1].value - 4.0);
  };
  for (std::size_t n : {100, 200, 400}) {
    const double ratio = error(n) / error(2 * n);
    INFO("intervals " << n << " ratio " << ratio);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("eigenvalues agree with a dense Jacobi oracle", "[numerics][eigen][property]") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 40;
    std::vector<double> d(n), e(n - 1);
    for (auto &v : d) v = u(rng);
    for (auto &v : e) v = u(rng);
    if (trial == 0) std::fill(e.begin(), e.end(), 1e-9); // nearly decoupled
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) dense[i][i] = d[i];
    for (std::size_t i = 0; i + 1 < n; ++i) dense[i][i + 1] = dense[i + 1][i] = e[i];
    const auto ref = oracle::jacobi_eigenvalues(dense);
    const TridiagonalOperator op(d, e, Grid::uniform(Coordinate::t, 0.0, 1.0, n + 2),
                                 TridiagonalOperator::Boundary::dirichlet);
    const auto pairs = eigen_lowest(op, 10);
    for (std::size_t k = 0; k < 10; ++k) {
      REQUIRE_THAT(pairs[k].value, WithinAbs(ref[k], 1e-10));
      REQUIRE(pairs[k].residual <= 1e-8);
    }
    for (std::size_t k = 0; k < 10; ++k) REQUIRE(op.count_below(ref[k] - 1e-9) == k);
  }
}

TEST_CASE("diagonal operator returns its smallest entry", "[numerics][eigen]") {
  std::vector<double> d{5.0, 3.0, 9.0, 1.5, 4.0, 7.0, 2.0, 8.0};
  const TridiagonalOperator op(d, std::vector<double>(d.size() - 1, 0.0),
                               Grid::uniform(Coordinate::t, 0.0, 1.0, d.size()));
  const auto p = eigen_lowest(op, 1);
  CHECK_THAT(p[0].value, WithinAbs(1.5, 1e-12));
  CHECK(std::abs(p[0].vector[3]) == p[0].vector.max_abs());
}

TEST_CASE("eigen_lowest preconditions", "[numerics][eigen]") {
  const Grid g = Grid::uniform(Coordinate::t, 0.0, 1.0, 21);
  const auto op = hamiltonian_t(constant(g, 0.0));
  CHECK_THROWS_AS(eigen_lowest(op, 0), domain_error);
  CHECK_THROWS_AS(eigen_lowest(op, 6), domain_error);
  CHECK_NOTHROW(eigen_lowest(op, 5));
  const Grid m = Grid::mapped(Coordinate::t, {0.0, 0.1, 0.3, 0.6, 1.0});
  CHECK_THROWS_AS(hamiltonian_t(constant(m, 0.0)), grid_error);
  CHECK_THROWS_AS(TridiagonalOperator({1.0, 2.0}, {}, g), grid_error);
  CHECK_THROWS_AS(TridiagonalOperator({1.0, 2.0, 3.0, 4.0, 5.0}, {1.0, 1.0, 1.0, 1.0}, g), grid_error);
}

TEST_CASE("Morse spectrum, eigenvectors and node counts", "[numerics][eigen]") {
  const Grid tg = acceptance_t_grid();
  const auto pairs = eigen_lowest(hamiltonian_t(morse_plus(tg)), 4);
  const double exact[] = {0.0, 0.4375, 0.75, 0.9375};
  for (int k = 0; k < 4; ++k) {
    CHECK_THAT(pairs[k].value, WithinAbs(exact[k], 1e-3));
    CHECK(pairs[k].residual <= 1e-8);
    CHECK_THAT(norm_squared(pairs[k].vector), WithinAbs(1.0, 1e-12));
    CHECK(oracle::count_sign_changes({pairs[k].vector.values().begin(), pairs[k].vector.values().end()}, 1e-8) == k);
    if (k > 0) CHECK(pairs[k].value - pairs[k - 1].value > 1e-12);
    // First significant sample is positive.
    const auto v = pairs[k].vector.values();
    const auto first = std::find_if(v.begin(), v.end(), [&](double s) { return std::abs(s) >= 1e-3 * pairs[k].vector.max_abs(); });
    CHECK(*first > 0.0);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      CHECK_THAT(inner_product(pairs[a].vector, pairs[b].vector).real(), WithinAbs(0.0, 1e-8));
}

TEST_CASE("eigen_lowest is deterministic", "[numerics][eigen]") {
  const Grid g = Grid::uniform(Coordinate::t, -20.0, 5.0, 3001);
  const auto op = hamiltonian_t(ScalarField::sample(g, [](double t) { return partner_potentials(t, PartnerCoordinate::t, reference).vplus; }));
  const auto a = eigen_lowest(op, 4), b = eigen_lowest(op, 4);
  for (int k = 0; k < 4; ++k) {
    REQUIRE(a[k].value == b[k].value);
    REQUIRE(std::equal(a[k].vector.values().begin(), a[k].vector.values().end(), b[k].vector.values().begin()));
  }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

TEST_CASE("x-space operator has the closed-form modes as eigenfunctions", "[numerics][operators]") {
  const Grid xg = acceptance_x_grid();
  for (int n = 0; n < 4; ++n) {
    const auto psi = upper_wavefunction(n, reference, xg).field;
    const auto hpsi = hamiltonian_x_action(psi, reference);
    std::vector<double> r(xg.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = hpsi[i] - level_ksq(n, reference) * psi[i];
    CHECK(interior_max(r) / psi.max_abs() <= 1e-4);
  }
  const auto zero = hamiltonian_x_action(ScalarField(xg), reference);
  CHECK(zero.max_abs() == 0.0);
  CHECK_THROWS_AS(hamiltonian_x_action(ScalarField(Grid::uniform(Coordinate::x, -1.0, 1.0, 11)), reference), domain_error);
}

TEST_CASE("plain and deformed x-space operators agree", "[numerics][operators][property]") {
  const Grid xg = acceptance_x_grid();
  const double len = xg.hi() - xg.lo();
  const auto fields = bump_test_fields(xg, 20, len / 60.0, len / 20.0);
  for (const auto &f : fields) {
    const auto a = hamiltonian_x_action(f, reference);
    const auto b = hamiltonian_x_action_deformed(f, reference);
    std::vector<double> d(xg.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
    REQUIRE(interior_max(d) / a.max_abs() <= 1e-8);
  }
}

TEST_CASE("ladder operator on a constant and on the ground mode", "[numerics][operators]") {
  const Grid tg = acceptance_t_grid();
  const auto one = apply_ladder(constant(tg, 1.0), LadderSign::plus, reference);
  for (std::size_t i = 0; i < tg.size(); i += 101) REQUIRE(one[i] == superpotential_t(tg[i], reference));

  const auto phi0 = upper_wavefunction(0, reference, tg).field;
  const auto a = apply_ladder(phi0, LadderSign::minus, reference);
  CHECK(interior_max({a.values().begin(), a.values().end()}) <= 1e-6 * phi0.max_abs());
}

TEST_CASE("ladder derivative matches the analytic derivative", "[numerics][operators]") {
  const Grid tg = acceptance_t_grid();
  const double kappa = level_kappa(0, reference);
  auto phi = [&](double t) {
    const double xi = 8.0 * std::exp(0.25 * t);
    return std::exp(0.5 * kappa * std::log(xi) - 0.5 * xi);
  };
  const auto f = ScalarField::sample(tg, phi);
  const auto lf = apply_ladder(f, LadderSign::plus, reference);
  std::vector<double> d(tg.size()), r(tg.size());
  for (std::size_t i = 0; i < tg.size(); ++i) {
    const double xi = 8.0 * std::exp(0.25 * tg[i]);
    d[i] = 0.25 * (0.5 * kappa - 0.5 * xi) * f[i];
    r[i] = lf[i] - superpotential_t(tg[i], reference) * f[i] - d[i];
  }
  CHECK(interior_max(r) <= 1e-7 * interior_max(d));
}

TEST_CASE("intertwining and factorization on bump fields", "[numerics][operators][property]") {
  const Grid tg = acceptance_t_grid();
  const auto vp = morse_plus(tg), vm = morse_minus(tg);
  const double len = tg.hi() - tg.lo();
  for (const auto &f : bump_test_fields(tg, 20, len / 180.0, len / 60.0)) {
    const auto lhs = apply_ladder(hamiltonian_t_action(vp, f), LadderSign::minus, reference);
    const auto rhs = hamiltonian_t_action(vm, apply_ladder(f, LadderSign::minus, reference));
    const auto fac = apply_ladder(apply_ladder(f, LadderSign::minus, reference), LadderSign::plus, reference);
    const auto hf = hamiltonian_t_action(vp, f);
    std::vector<double> d1(tg.size()), d2(tg.size());
    for (std::size_t i = 0; i < tg.size(); ++i) {
      d1[i] = lhs[i] - rhs[i];
      d2[i] = fac[i] - hf[i];
    }
    REQUIRE(interior_max(d1) <= 5e-4 * f.max_abs());
    REQUIRE(interior_max(d2) <= 5e-4 * f.max_abs());
  }
}

TEST_CASE("bump test fields are deterministic and stay off the boundary", "[numerics]") {
  const Grid g = Grid::uniform(Coordinate::t, 0.0, 10.0, 1001);
  const auto a = bump_test_fields(g, 5, 0.05, 0.1), b = bump_test_fields(g, 5, 0.05, 0.1);
  const auto c = bump_test_fields(g, 5, 0.05, 0.1, 99);
  REQUIRE(a.size() == 5);
  bool differs = false;
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      REQUIRE(a[k][i] == b[k][i]);
      differs = differs || a[k][i] != c[k][i];
    }
    CHECK(std::abs(a[k][0]) < 1e-6 * a[k].max_abs());
    CHECK(std::abs(a[k][g.size() - 1]) < 1e-6 * a[k].max_abs());
  }
  CHECK(differs);
}
