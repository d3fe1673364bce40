#include <catch_amalgamated.hpp>

#include <cmath>

#include "metriplex/field2d.hpp"
#include "oracles.hpp"

using namespace metriplex;

namespace {
constexpr double kPi = 3.14159265358979323846;

Grid2D make_grid(int n = 32) { return Grid2D(n, n, 2.0 * kPi, 2.0 * kPi); }

Vec multimode_vorticity(const Grid2D& g) {
  Vec w(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double x = i * g.dx(), y = j * g.dy();
      w[g.idx(i, j)] = std::sin(x) * std::cos(2.0 * y) + 0.5 * std::cos(3.0 * x + y) +
                       0.3 * std::sin(x + 4.0 * y);
    }
  w = dealias(g, w);
  const double m = grid_mean(g, w);
  for (double& v : w) v -= m;
  return w;
}

double pair_integral(const Grid2D& g, const Vec& a, const Vec& b) {
  double s = 0;
  for (int i = 0; i < g.size(); ++i) s += a[i] * b[i];
  return s * g.cell_area();
}
}  // namespace

TEST_CASE("Grid2D validation") {
  CHECK_THROWS_AS(Grid2D(7, 32, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid2D(32, 12, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid2D(32, 32, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("streamfunction solve inverts the Laplacian") {
  const auto g = make_grid();
  Vec w(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) w[g.idx(i, j)] = std::sin(i * g.dx()) * std::sin(2.0 * j * g.dy());
  const Vec psi = solve_streamfunction(g, w);
  // laplacian eigenvalue -(1 + 4)
  for (int i = 0; i < g.size(); ++i) CHECK(psi[i] == Catch::Approx(-w[i] / 5.0).margin(1e-12));
}

TEST_CASE("single eigenmode is steady in every mode") {
  const auto g = make_grid();
  Vec w(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) w[g.idx(i, j)] = std::sin(i * g.dx());
  for (auto mode : {Euler2DMode::Hamiltonian, Euler2DMode::DoubleBracket, Euler2DMode::Metriplectic}) {
    const Vec rhs = euler2d_rhs(mode, g, w, 0.3);
    CHECK(norm2(rhs) <= 1e-10);
  }
}

TEST_CASE("nonzero mean vorticity is rejected") {
  const auto g = make_grid();
  CHECK_THROWS_AS(euler2d_rhs(Euler2DMode::Hamiltonian, g, Vec(g.size(), 1.0), 0.1),
                  std::invalid_argument);
}

TEST_CASE("hamiltonian advection conserves H, enstrophy and circulation") {
  const auto g = make_grid();
  const Vec w = multimode_vorticity(g);
  const Vec rhs = euler2d_rhs(Euler2DMode::Hamiltonian, g, w, 0.0);
  const Vec psi = solve_streamfunction(g, w);
  CHECK(std::abs(pair_integral(g, psi, rhs)) <= 1e-12);  // dH/dt
  CHECK(std::abs(pair_integral(g, w, rhs)) <= 1e-12);    // dS/dt
  CHECK(std::abs(euler2d_circulation(g, rhs)) <= 1e-12); // d(int w)/dt
}

TEST_CASE("metriplectic mode: dH = 0, dS >= 0") {
  const auto g = make_grid();
  const Vec w = multimode_vorticity(g);
  const double lambda = 0.1;
  const Vec rhs = euler2d_rhs(Euler2DMode::Metriplectic, g, w, lambda);
  const Vec psi = solve_streamfunction(g, w);
  const Vec chi = spectral_jacobian(g, w, psi);
  CHECK(std::abs(pair_integral(g, psi, rhs)) <= 1e-12);
  const double sdot = pair_integral(g, w, rhs);
  CHECK(sdot >= -1e-10);
  // matches the quadrature identity dS/dt = lambda int [w, psi]^2
  CHECK(sdot == Catch::Approx(lambda * pair_integral(g, chi, chi)).margin(1e-10));
}

TEST_CASE("double-bracket mode monotonicity and Casimirs") {
  const auto g = make_grid();
  const Vec w = multimode_vorticity(g);
  const Vec psi = solve_streamfunction(g, w);
  const Vec chi = spectral_jacobian(g, w, psi);

  SECTION("positive lambda raises H = int(w psi)/2 at fixed Casimirs") {
    const double lambda = 0.1;
    const Vec rhs = euler2d_rhs(Euler2DMode::DoubleBracket, g, w, lambda);
    const double hdot = pair_integral(g, psi, rhs);
    CHECK(hdot == Catch::Approx(lambda * pair_integral(g, chi, chi)).margin(1e-10));
    CHECK(std::abs(pair_integral(g, w, rhs)) <= 1e-12);     // enstrophy flat
    CHECK(std::abs(euler2d_circulation(g, rhs)) <= 1e-12);  // circulation flat
  }

  SECTION("negative lambda drives H down (sign check from a two-mode state)") {
    Vec w2(g.size());
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j)
        w2[g.idx(i, j)] = std::sin(i * g.dx()) * std::cos(j * g.dy()) +
                          0.4 * std::cos(2.0 * i * g.dx() + j * g.dy());
    w2 = dealias(g, w2);
    const Vec rhs = euler2d_rhs(Euler2DMode::DoubleBracket, g, w2, -0.1);
    const Vec psi2 = solve_streamfunction(g, w2);
    CHECK(pair_integral(g, psi2, rhs) <= 1e-12);
  }
}

TEST_CASE("Arakawa option") {
  // coarse-grid FD Jacobian approximates the spectral one and keeps its
  // discrete conservation pairings
  const auto g = make_grid(64);
  Vec f(g.size()), h(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double x = i * g.dx(), y = j * g.dy();
      f[g.idx(i, j)] = std::sin(x) * std::cos(y);
      h[g.idx(i, j)] = std::cos(2.0 * x) + std::sin(y);
    }
  const Vec ja = arakawa_jacobian(g, f, h);
  const Vec js = spectral_jacobian(g, f, h);
  double worst = 0, scale = 0;
  for (int i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(ja[i] - js[i]));
    scale = std::max(scale, std::abs(js[i]));
  }
  CHECK(worst <= 0.05 * scale);  // second-order truncation at this resolution
  CHECK(std::abs(pair_integral(g, f, ja)) <= 1e-12);
  CHECK(std::abs(pair_integral(g, h, ja)) <= 1e-12);
}

TEST_CASE("dealias projection is idempotent") {
  const auto g = make_grid();
  auto rng = seeded_engine(11);
  Vec w = random_vec(rng, g.size());
  const Vec w1 = dealias(g, w);
  const Vec w2 = dealias(g, w1);
  for (int i = 0; i < g.size(); ++i) CHECK(w2[i] == Catch::Approx(w1[i]).margin(1e-12));
}

TEST_CASE("rectangular grids keep the conservation pairings") {
  const Grid2D g(32, 64, 2.0 * kPi, 4.0 * kPi);
  Vec w(g.size());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double x = i * g.dx(), y = j * g.dy();
      w[g.idx(i, j)] = std::sin(x) * std::cos(y) + 0.4 * std::cos(2.0 * x + 0.5 * y);
    }
  w = dealias(g, w);
  const double m = grid_mean(g, w);
  for (double& v : w) v -= m;

  const Vec rhs = euler2d_rhs(Euler2DMode::Metriplectic, g, w, 0.1);
  const Vec psi = solve_streamfunction(g, w);
  CHECK(std::abs(pair_integral(g, psi, rhs)) <= 1e-12);
  CHECK(pair_integral(g, w, rhs) >= -1e-10);

  // second derivatives recompose the vorticity from the streamfunction
  const Vec lap_psi = axpy(1.0, partial_x(g, partial_x(g, psi)),
                           partial_y(g, partial_y(g, psi)));
  for (int i = 0; i < g.size(); ++i) CHECK(lap_psi[i] == Catch::Approx(w[i]).margin(1e-9));
}
