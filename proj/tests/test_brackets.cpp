#include <catch_amalgamated.hpp>

#include "metriplex/brackets.hpp"
#include "metriplex/constructors.hpp"
#include "oracles.hpp"

using namespace metriplex;

namespace {
ScalarField random_quadratic(std::mt19937_64& rng, int n) {
  return quadratic_field(oracle::random_symmetric(rng, n), random_vec(rng, n));
}
}  // namespace

TEST_CASE("poisson_bracket canonical and Lie-Poisson anchors") {
  const PoissonField Jc = canonical_field(1);
  const ScalarField q = coordinate_field(2, 0), p = coordinate_field(2, 1);
  CHECK(poisson_bracket(Jc, q, p, {0.3, -0.2}) == Catch::Approx(1.0));
  CHECK(poisson_bracket(Jc, q, q, {0.3, -0.2}) == 0.0);

  const PoissonField J3 = lie_poisson_field(StructureConstants::so3());
  const ScalarField z1 = coordinate_field(3, 0), z2 = coordinate_field(3, 1);
  // J^{12} = c^{12}_k z^k = -z3
  CHECK(poisson_bracket(J3, z1, z2, {1.0, 2.0, 3.0}) == Catch::Approx(-3.0));
}

TEST_CASE("lie_poisson_tensor values") {
  const auto so3 = StructureConstants::so3();
  CHECK(lie_poisson_tensor(so3, {0.0, 0.0, 0.0}).max_abs() == 0.0);

  const Mat J = lie_poisson_tensor(so3, {0.0, 0.0, 1.0});
  CHECK(J(0, 1) == Catch::Approx(-1.0));
  CHECK(J(1, 0) == Catch::Approx(1.0));
  CHECK(J(0, 2) == 0.0);
  CHECK(J(1, 2) == 0.0);
  CHECK(J.symmetry_defect() == 0.0);

  const Mat Jk = lie_poisson_tensor(StructureConstants::kida(), {1.0, 0.0, 0.0});
  CHECK(Jk(1, 2) == Catch::Approx(-1.0));
  CHECK(Jk(0, 1) == 0.0);
  CHECK(Jk(0, 2) == 0.0);

  // the full Kida tensor at (1,2,3)
  const Mat Jk2 = lie_poisson_tensor(StructureConstants::kida(), {1.0, 2.0, 3.0});
  CHECK(Jk2(0, 1) == Catch::Approx(3.0));
  CHECK(Jk2(0, 2) == Catch::Approx(-2.0));
  CHECK(Jk2(1, 2) == Catch::Approx(-1.0));
}

TEST_CASE("four_bracket anchors and pair symmetries") {
  const auto R = FourBracketField::constant_tensor(space_form(Mat::identity(3), 1.0), true, true);
  const ScalarField z1 = coordinate_field(3, 0), z2 = coordinate_field(3, 1);
  const Vec z{0.4, -0.7, 0.1};
  CHECK(four_bracket(R, z1, z1, z1, z2, z) == 0.0);
  CHECK(four_bracket(R, z1, z2, z1, z2, z) == Catch::Approx(1.0));

  auto rng = seeded_engine(3);
  for (int rep = 0; rep < 100; ++rep) {
    const ScalarField f = random_quadratic(rng, 3), k = random_quadratic(rng, 3);
    const ScalarField g = random_quadratic(rng, 3), n = random_quadratic(rng, 3);
    const Vec zz = random_vec(rng, 3);
    const double v = four_bracket(R, f, k, g, n, zz);
    CHECK(four_bracket(R, k, f, g, n, zz) == Catch::Approx(-v).margin(1e-10));
    CHECK(four_bracket(R, f, k, n, g, zz) == Catch::Approx(-v).margin(1e-10));
    CHECK(four_bracket(R, g, n, f, k, zz) == Catch::Approx(v).margin(1e-10));
  }
}

TEST_CASE("every constructor-produced field keeps the bracket symmetries") {
  const auto so3 = StructureConstants::so3();
  const std::vector<FourBracketField> fields{
      FourBracketField::constant_tensor(space_form(Mat::identity(3), 0.4), true, true),
      FourBracketField::constant_tensor(kn_product(Mat::identity(3), Mat::identity(3)), true, true),
      FourBracketField::constant_tensor(lie_algebra_4tensor(StructureConstants::kida(),
                                                            Mat::identity(3)), false, true),
      FourBracketField::constant_tensor(ck_4tensor(so3, -0.5), true, true),
      contravariant_curvature_field(lie_poisson_field(so3), euclidean_metric_field(3)),
  };
  auto rng = seeded_engine(29);
  for (const auto& R : fields) {
    for (int rep = 0; rep < 25; ++rep) {
      const ScalarField f = random_quadratic(rng, 3), k = random_quadratic(rng, 3);
      const ScalarField g = random_quadratic(rng, 3), n = random_quadratic(rng, 3);
      const Vec zz = random_vec(rng, 3);
      const double v = four_bracket(R, f, k, g, n, zz);
      CHECK(four_bracket(R, k, f, g, n, zz) == Catch::Approx(-v).margin(1e-10));
      CHECK(four_bracket(R, f, k, n, g, zz) == Catch::Approx(-v).margin(1e-10));
      CHECK(four_bracket(R, g, n, f, k, zz) == Catch::Approx(v).margin(1e-10));
    }
  }
}

TEST_CASE("g_metric degeneracy and anchors") {
  auto rng = seeded_engine(17);
  const double lambda = 0.6;
  const auto R = FourBracketField::constant_tensor(space_form(Mat::identity(3), lambda), true, true);

  SECTION("G dH = 0 for random polynomial H (First Law degeneracy)") {
    for (int rep = 0; rep < 50; ++rep) {
      const ScalarField H = random_quadratic(rng, 3);
      const Vec z = random_vec(rng, 3);
      const Vec gdh = g_metric(R, H, z).apply(H.gradient(z));
      CHECK(norm2(gdh) <= 1e-10);
    }
  }

  SECTION("space form with dH = e1 gives lambda diag(0,1,1)") {
    const ScalarField H = coordinate_field(3, 0);
    const Mat G = g_metric(R, H, {0.2, 0.5, -1.0});
    CHECK(G(0, 0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(G(1, 1) == Catch::Approx(lambda));
    CHECK(G(2, 2) == Catch::Approx(lambda));
    CHECK(G(0, 1) == Catch::Approx(0.0).margin(1e-15));
    CHECK(G.symmetry_defect() == 0.0);
  }

  SECTION("so(3) contravariant curvature with dH = e3 gives diag(1,1,0)/4") {
    const Rank4 Rc = contravariant_curvature(lie_poisson_field(StructureConstants::so3()),
                                             euclidean_metric_field(3), {0.3, -0.4, 0.9});
    const Mat G = g_metric_from(Rc, unit(3, 2));
    CHECK(G(0, 0) == Catch::Approx(0.25).margin(1e-9));
    CHECK(G(1, 1) == Catch::Approx(0.25).margin(1e-9));
    CHECK(G(2, 2) == Catch::Approx(0.0).margin(1e-9));
  }
}

TEST_CASE("two_bracket reduction") {
  auto rng = seeded_engine(23);
  const double lambda = 0.37;
  const auto R = FourBracketField::constant_tensor(space_form(Mat::identity(3), lambda), true, true);
  Mat Qh(3, 0.0, SymmetryTag::Symmetric);
  Qh(0, 0) = 1.0;
  Qh(1, 1) = 0.5;
  Qh(2, 2) = 1.0 / 3.0;
  const ScalarField H = quadratic_field(Qh, Vec(3, 0.0));
  const ScalarField S = quadratic_field(Mat::identity(3).scaled_by(2.0), Vec(3, 0.0));

  SECTION("slots holding H annihilate") {
    const Vec z = random_vec(rng, 3);
    CHECK(std::abs(two_bracket(R, H, H, S, z)) <= 1e-14);
    CHECK(std::abs(two_bracket(R, H, S, H, z)) <= 1e-14);
  }

  SECTION("symmetric in f and g") {
    for (int rep = 0; rep < 30; ++rep) {
      const ScalarField f = random_quadratic(rng, 3), g = random_quadratic(rng, 3);
      const Vec z = random_vec(rng, 3);
      CHECK(two_bracket(R, H, f, g, z) ==
            Catch::Approx(two_bracket(R, H, g, f, z)).margin(1e-12));
    }
  }

  SECTION("rigid-body entropy rate at L=(1,1,1), I=(1,2,3)") {
    const Vec L{1.0, 1.0, 1.0};
    const double v = two_bracket(R, H, S, S, L);
    // = lambda (|dH|^2 |dS|^2 - (dH.dS)^2) = 26 lambda / 9, cross-checked by
    // the brute-force contraction
    CHECK(v >= 0.0);
    CHECK(v == Catch::Approx(26.0 * lambda / 9.0).epsilon(1e-12));
    CHECK(v == Catch::Approx(oracle::contract4_brute(R({}), S.gradient(L), H.gradient(L),
                                                     S.gradient(L), H.gradient(L)))
                   .epsilon(1e-12));
  }
}

TEST_CASE("km_tensor structure") {
  auto rng = seeded_engine(31);
  const double lambda = 0.8;
  const auto R = FourBracketField::constant_tensor(space_form(Mat::identity(3), lambda), true, true);
  const ScalarField H = random_quadratic(rng, 3);
  const ScalarField S = random_quadratic(rng, 3);
  const Vec z = random_vec(rng, 3);

  SECTION("space form gives lambda (dS x dH - dH x dS)") {
    const Mat JKM = km_tensor(R, S, H, z);
    const Vec gS = S.gradient(z), gH = H.gradient(z);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(JKM(i, j) == Catch::Approx(lambda * (gS[i] * gH[j] - gH[i] * gS[j])).margin(1e-12));
    CHECK(JKM.symmetry_defect() <= 1e-15);
  }

  SECTION("H contraction vanishes exactly by antisymmetry") {
    const Mat JKM = km_tensor(R, S, H, z);
    const Vec gH = H.gradient(z);
    CHECK(bilinear(gH, JKM, gH) == 0.0);
    // S = H makes the KM reduction of the whole bracket vanish
    CHECK(bilinear(gH, km_tensor(R, H, H, z), gH) == 0.0);
  }

  SECTION("zero tensor maps to zero") {
    const auto Z = FourBracketField::constant_tensor(Rank4(3), true, true);
    CHECK(km_tensor(Z, S, H, z).max_abs() == 0.0);
  }
}

TEST_CASE("double_bracket_tensor identities") {
  auto rng = seeded_engine(41);
  const auto so3 = StructureConstants::so3();
  const PoissonField J = lie_poisson_field(so3);

  SECTION("so(3) with euclidean g: D = |z|^2 I - z z^T") {
    for (int rep = 0; rep < 20; ++rep) {
      const Vec z = random_vec(rng, 3);
      const Mat D = double_bracket_tensor(J, Mat::identity(3), z);
      const double z2 = dot(z, z);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(D(i, j) == Catch::Approx((i == j ? z2 : 0.0) - z[i] * z[j]).margin(1e-12));
      // Casimir gradient annihilated: D z = 0
      CHECK(norm2(D.apply(z)) <= 1e-12);
    }
  }

  SECTION("zero J maps to zero; canonical J with g = I gives I") {
    const PoissonField J0 = constant_poisson_field(Mat(4));
    CHECK(double_bracket_tensor(J0, Mat::identity(4), Vec(4, 0.3)).max_abs() == 0.0);
    const Mat D = double_bracket_tensor(canonical_field(2), Mat::identity(4), Vec(4, 0.1));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(D(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));
  }

  SECTION("PSD when g is PSD") {
    for (int rep = 0; rep < 20; ++rep) {
      const Mat g = oracle::random_spd(rng, 3);
      const Vec z = random_vec(rng, 3);
      const Mat D = double_bracket_tensor(J, g, z);
      const Vec v = random_vec(rng, 3);
      CHECK(bilinear(v, D, v) >= -1e-12);
    }
  }
}

TEST_CASE("sectional_curvature") {
  const double lambda = 1.3;
  const auto R = FourBracketField::constant_tensor(space_form(Mat::identity(3), lambda), true, true);
  const Vec z{0.0, 0.0, 0.0};
  const Vec a = unit(3, 0), b = unit(3, 1);
  CHECK(sectional_curvature(R, a, a, z) == 0.0);
  CHECK(sectional_curvature(R, a, scaled(2.5, a), z) == 0.0);
  CHECK(sectional_curvature(R, a, b, z) == Catch::Approx(lambda));
}

TEST_CASE("finite-difference gradient fallback matches analytic gradients") {
  auto rng = seeded_engine(53);
  for (int rep = 0; rep < 10; ++rep) {
    const ScalarField f = random_quadratic(rng, 4);
    ScalarField fd_only;
    fd_only.value = f.value;  // no analytic gradient supplied
    const Vec z = random_vec(rng, 4);
    const Vec ga = f.gradient(z), gf = fd_only.gradient(z);
    for (int i = 0; i < 4; ++i)
      CHECK(gf[i] == Catch::Approx(ga[i]).margin(1e-5 * std::max(1.0, norm2(ga))));
  }
}
