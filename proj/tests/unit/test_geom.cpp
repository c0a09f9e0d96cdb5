#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "maxsie/errors.hpp"
#include "maxsie/geom.hpp"
#include "maxsie/spherical_harmonics.hpp"

using namespace maxsie;

namespace
{

Vec3 WeightedNormalSum(const SurfaceGrid &g)
{
  Vec3 s = Vec3::Zero();
  for (int i = 0; i < g.Size(); i++)
  {
    s += g.Weights()[i] * g.Normals()[i];
  }
  return s;
}

double ProlateArea(double a, double c)
{
  const double e = std::sqrt(1.0 - a * a / (c * c));
  return 2.0 * pi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

}  // namespace

TEST_CASE("sphere grid area, scaling and closed-surface identity")
{
  const SurfaceGrid g1 = BuildSphereGrid(1.0, 16, 32);
  CHECK(std::abs(g1.Area() - 4.0 * pi) <= 1e-12);
  CHECK(WeightedNormalSum(g1).norm() <= 1e-12);

  const SurfaceGrid g2 = BuildSphereGrid(2.0, 16, 32);
  CHECK(std::abs(g2.Area() - 16.0 * pi) <= 1e-11);
}

TEST_CASE("grid invariants: unit normals, node count, poles excluded")
{
  for (const SurfaceGrid &g : {BuildSphereGrid(1.5, 9, 20), BuildEllipsoidGrid(Vec3(1.0, 0.7, 2.0), 10, 17)})
  {
    CHECK(g.Size() == g.NPolar() * g.NAzimuthal());
    for (int i = 0; i < g.Size(); i++)
    {
      CHECK(std::abs(g.Normals()[i].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(g.Tangent1()[i].dot(g.Normals()[i])) <= 1e-12);
      CHECK((g.Tangent1()[i].cross(g.Tangent2()[i]) - g.Normals()[i]).norm() <= 1e-12);
    }
    for (double t : g.PolarAngles())
    {
      CHECK(t > 0.0);
      CHECK(t < pi);
    }
  }
}

TEST_CASE("invalid orders and degenerate shapes are configuration errors")
{
  CHECK_THROWS_AS(BuildSphereGrid(1.0, 3, 16), ConfigError);
  CHECK_THROWS_AS(BuildSphereGrid(1.0, 8, 7), ConfigError);
  CHECK_THROWS_AS(BuildSphereGrid(0.0, 8, 16), ConfigError);
  CHECK_THROWS_AS(BuildEllipsoidGrid(Vec3(1.0, 0.0, 1.0), 8, 16), ConfigError);
  CHECK_THROWS_AS(BuildEllipsoidGrid(Vec3(1.0, -2.0, 1.0), 8, 16), ConfigError);
}

TEST_CASE("unit-axes ellipsoid reproduces the sphere grid")
{
  const SurfaceGrid s = BuildSphereGrid(1.0, 16, 32);
  const SurfaceGrid e = BuildEllipsoidGrid(Vec3::Ones(), 16, 32);
  REQUIRE(s.Size() == e.Size());
  for (int i = 0; i < s.Size(); i++)
  {
    CHECK((s.Nodes()[i] - e.Nodes()[i]).norm() <= 1e-14);
    CHECK((s.Normals()[i] - e.Normals()[i]).norm() <= 1e-14);
    CHECK(std::abs(s.Weights()[i] - e.Weights()[i]) <= 1e-14);
  }
}

TEST_CASE("prolate spheroid area against the closed form")
{
  const SurfaceGrid g = BuildEllipsoidGrid(Vec3(1.0, 1.0, 2.0), 24, 48);
  CHECK(std::abs(g.Area() - ProlateArea(1.0, 2.0)) <= 1e-8);
  CHECK(WeightedNormalSum(g).norm() <= 1e-10);
}

TEST_CASE("ellipsoid area error decays geometrically with the polar order")
{
  const double exact = ProlateArea(1.0, 2.0);
  double previous = INFINITY;
  for (int n : {4, 6, 8, 10, 12})
  {
    const double err = std::abs(BuildEllipsoidGrid(Vec3(1.0, 1.0, 2.0), n, 2 * n).Area() - exact);
    CHECK(err < previous);
    if (err > 1e-13)
    {
      CHECK(err < 0.5 * previous);
    }
    previous = err;
  }
}

TEST_CASE("quadrature integrates spherical harmonics through degree 2 n_polar - 1")
{
  const int np = 8;
  const SurfaceGrid g = BuildSphereGrid(1.0, np, 2 * 2 * np);
  for (int l = 0; l <= 2 * np - 1; l++)
  {
    for (int m = -l; m <= l; m++)
    {
      cplx s = 0.0;
      for (int i = 0; i < g.Size(); i++)
      {
        s += g.Weights()[i] * SphericalHarmonic(l, m, g.Directions()[i]);
      }
      const cplx expected = (l == 0) ? cplx(std::sqrt(4.0 * pi)) : cplx(0.0);
      CHECK(std::abs(s - expected) <= 1e-12);
    }
  }
}
