#include <catch_amalgamated.hpp>

#include <cmath>

#include "metriplex/field1d.hpp"
#include "oracles.hpp"

using namespace metriplex;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vec sampled(const Grid1D& g, double (*f)(double)) {
  Vec u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = f(g.x(i));
  return u;
}

Vec random_field(std::mt19937_64& rng, const Grid1D& g, int modes = 6) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Vec u(g.n, 0.0);
  for (int m = 1; m <= modes; ++m) {
    const double a = amp(rng), b = amp(rng);
    for (int i = 0; i < g.n; ++i) {
      const double kx = 2.0 * kPi * m * g.x(i) / g.length;
      u[i] += a * std::cos(kx) + b * std::sin(kx);
    }
  }
  return u;
}
}  // namespace

TEST_CASE("Grid1D validation") {
  CHECK_THROWS_AS(Grid1D(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(16, -1.0), std::invalid_argument);
  const Grid1D g(16, 4.0);
  CHECK(g.dx() == Catch::Approx(0.25));
}

TEST_CASE("spectral_derivative is exact on resolved modes") {
  const Grid1D g(64, 2.0 * kPi);
  const Vec u = sampled(g, [](double x) { return std::sin(x); });
  const Vec du = spectral_derivative(g, u, 1);
  const Vec d2u = spectral_derivative(g, u, 2);
  double e1 = 0, e2 = 0;
  for (int i = 0; i < g.n; ++i) {
    e1 = std::max(e1, std::abs(du[i] - std::cos(g.x(i))));
    e2 = std::max(e2, std::abs(d2u[i] + std::sin(g.x(i))));
  }
  CHECK(e1 <= 1e-10);
  CHECK(e2 <= 1e-10);

  CHECK(norm2(spectral_derivative(g, Vec(g.n, 3.7), 1)) == 0.0);

  // second derivative agrees with the squared first-derivative operator
  auto rng = seeded_engine(1);
  const Vec w = random_field(rng, g);
  const Vec a = spectral_derivative(g, w, 2);
  const Vec b = spectral_derivative(g, spectral_derivative(g, w, 1), 1);
  for (int i = 0; i < g.n; ++i) CHECK(a[i] == Catch::Approx(b[i]).margin(1e-10));
}

TEST_CASE("hilbert_transform conventions") {
  const Grid1D g(64, 2.0 * kPi);

  SECTION("annihilates constants, exactly") {
    const Vec h = hilbert_transform(g, Vec(g.n, 1.0));
    for (double v : h) CHECK(v == 0.0);
  }

  SECTION("cos -> sin") {
    const Vec u = sampled(g, [](double x) { return std::cos(x); });
    const Vec h = hilbert_transform(g, u);
    for (int i = 0; i < g.n; ++i) CHECK(h[i] == Catch::Approx(std::sin(g.x(i))).margin(1e-12));
  }

  SECTION("commutes with the derivative") {
    auto rng = seeded_engine(2);
    const Vec u = random_field(rng, g);
    const Vec a = hilbert_transform(g, spectral_derivative(g, u, 1));
    const Vec b = spectral_derivative(g, hilbert_transform(g, u), 1);
    for (int i = 0; i < g.n; ++i) CHECK(a[i] == Catch::Approx(b[i]).margin(1e-10));
  }

  SECTION("anti-self-adjoint on the grid") {
    auto rng = seeded_engine(3);
    const Vec f = random_field(rng, g), h = random_field(rng, g);
    const double lhs = dot(f, hilbert_transform(g, h)) + dot(hilbert_transform(g, f), h);
    CHECK(std::abs(lhs) * g.dx() <= 1e-12);
  }
}

TEST_CASE("viscous dissipation") {
  const Grid1D g(128, 2.0 * kPi);
  Dissipative1DParams p;
  p.W = 1.0;

  SECTION("sin mode returns nu d^2 u") {
    const Vec u = sampled(g, [](double x) { return std::sin(x); });
    const Vec rhs = dissipative_rhs_1d(Dissipation1D::Viscous, g, u, p);
    for (int i = 0; i < g.n; ++i)
      CHECK(rhs[i] == Catch::Approx(-std::sin(g.x(i))).margin(1e-10));
  }

  SECTION("discrete first law: H = int u is flat") {
    auto rng = seeded_engine(4);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec u = random_field(rng, g);
      CHECK(std::abs(energy_rate_1d(Dissipation1D::Viscous, g, u, p)) <= 1e-12);
    }
  }

  SECTION("S = u^2/2 decays monotonically for positive viscosity") {
    // the derivative-pair bracket with W > 0 relaxes the quadratic Casimir
    auto rng = seeded_engine(5);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec u = random_field(rng, g);
      const double sdot = entropy_production_1d(Dissipation1D::Viscous, g, u, p);
      CHECK(sdot <= 1e-10);
      // equals -W int (du)^2 by the quadrature oracle
      const Vec du = spectral_derivative(g, u, 1);
      double q = 0;
      for (int i = 0; i < g.n; ++i) q += du[i] * du[i];
      CHECK(sdot == Catch::Approx(-p.W * q * g.dx()).margin(1e-9));
    }
  }
}

TEST_CASE("KdV-conserving dissipation") {
  const Grid1D g(512, 80.0);
  Dissipative1DParams p;
  p.W = 1e-3;
  const double alpha = 0.5;
  p.c = -4.0 * alpha * alpha;

  SECTION("equals the closed form -d(W Hu dHu) - W (dHu)^2") {
    auto rng = seeded_engine(6);
    const Vec u = random_field(rng, g);
    const Vec hu = kdv_h_gradient(g, u, p.c);
    const Vec dhu = spectral_derivative(g, hu, 1);
    Vec flux(g.n);
    for (int i = 0; i < g.n; ++i) flux[i] = p.W * hu[i] * dhu[i];
    const Vec dflux = spectral_derivative(g, flux, 1);
    const Vec rhs = dissipative_rhs_1d(Dissipation1D::KdvConserving, g, u, p);
    for (int i = 0; i < g.n; ++i)
      CHECK(rhs[i] == Catch::Approx(-dflux[i] - p.W * dhu[i] * dhu[i]).margin(1e-10));
  }

  SECTION("the matched soliton is quiescent") {
    const Vec u = kdv_soliton(g, alpha, g.length / 2.0);
    const Vec hu = kdv_h_gradient(g, u, p.c);
    CHECK(norm2(spectral_derivative(g, hu, 1)) <= 1e-9);
    const double sdot_soliton = std::abs(entropy_production_1d(Dissipation1D::KdvConserving, g, u, p));
    auto rng = seeded_engine(7);
    Vec noisy = u;
    const Vec pert = random_field(rng, g, 4);
    for (int i = 0; i < g.n; ++i) noisy[i] += 0.05 * pert[i];
    const double sdot_noisy = std::abs(entropy_production_1d(Dissipation1D::KdvConserving, g, noisy, p));
    CHECK(sdot_soliton <= 1e-6 * sdot_noisy);
  }

  SECTION("discrete KdV energy is orthogonal to the dissipative field") {
    auto rng = seeded_engine(8);
    const Vec u = random_field(rng, g);
    const Vec rhs = dissipative_rhs_1d(Dissipation1D::KdvConserving, g, u, p);
    double scale = norm2(kdv_h_gradient(g, u, p.c)) * norm2(rhs) * g.dx();
    CHECK(std::abs(energy_rate_1d(Dissipation1D::KdvConserving, g, u, p)) <=
          1e-8 * std::max(1.0, scale));
  }
}

TEST_CASE("Ott-Sudan dissipation") {
  const Grid1D g(128, 2.0 * kPi);
  Dissipative1DParams p;
  p.W = 0.7;

  SECTION("equals -2 W Hil[du] against the operator composition") {
    auto rng = seeded_engine(9);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec u = random_field(rng, g);
      const Vec rhs = dissipative_rhs_1d(Dissipation1D::OttSudan, g, u, p);
      const Vec ref = scaled(-2.0 * p.W, hilbert_transform(g, spectral_derivative(g, u, 1)));
      for (int i = 0; i < g.n; ++i) CHECK(rhs[i] == Catch::Approx(ref[i]).margin(1e-10));
    }
  }

  SECTION("cos k x anchor: rhs = -2 W k cos k x") {
    const Vec u = sampled(g, [](double x) { return std::cos(x); });
    const Vec rhs = dissipative_rhs_1d(Dissipation1D::OttSudan, g, u, p);
    for (int i = 0; i < g.n; ++i)
      CHECK(rhs[i] == Catch::Approx(-2.0 * p.W * std::cos(g.x(i))).margin(1e-10));
  }

  SECTION("H is flat and S decays (Landau-damping direction)") {
    auto rng = seeded_engine(10);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec u = random_field(rng, g);
      CHECK(std::abs(energy_rate_1d(Dissipation1D::OttSudan, g, u, p)) <= 1e-12);
      CHECK(entropy_production_1d(Dissipation1D::OttSudan, g, u, p) <= 1e-10);
    }
  }
}

TEST_CASE("positive-data Hamiltonian mode") {
  const Grid1D g(128, 2.0 * kPi);
  Vec u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = 2.0 + 0.5 * std::sin(g.x(i));

  const Vec rhs = hamiltonian_rhs_1d(g, u);
  double sum = 0;
  for (double v : rhs) sum += v;
  CHECK(std::abs(sum) * g.dx() <= 1e-12);  // H = int u conserved

  Vec bad = u;
  bad[3] = 0.0;
  CHECK_THROWS_AS(hamiltonian_rhs_1d(g, bad), std::domain_error);
}
