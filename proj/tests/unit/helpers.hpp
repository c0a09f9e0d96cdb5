#ifndef MAXSIE_TESTS_HELPERS_HPP
#define MAXSIE_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/spherical_harmonics.hpp"
#include "maxsie/types.hpp"

namespace maxsie::test
{

inline double MaxAbs(const CVector &v)
{
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

// Random complex coefficients up to the given degree.
inline CVector RandomCoefficients(int degree, std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  CVector c((degree + 1) * (degree + 1));
  for (int i = 0; i < c.size(); i++)
  {
    c[i] = cplx(g(rng), g(rng));
  }
  return c;
}

// Samples of sum c_lm Y_lm at the grid directions.
inline CVector SynthesizeAt(const SurfaceGrid &grid, const CVector &c)
{
  const int degree = static_cast<int>(std::lround(std::sqrt(double(c.size())))) - 1;
  CVector f = CVector::Zero(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    for (int l = 0; l <= degree; l++)
    {
      for (int m = -l; m <= l; m++)
      {
        f[i] += c[ShIndex(l, m)] * SphericalHarmonic(l, m, grid.Directions()[i]);
      }
    }
  }
  return f;
}

// grad_Gamma u + n x grad_Gamma v for random degree-limited u, v on a sphere grid.
inline std::vector<CVec3> RandomTangentialField(const SurfaceGrid &grid, int degree, std::mt19937_64 &rng)
{
  const CVector cu = RandomCoefficients(degree, rng), cv = RandomCoefficients(degree, rng);
  const double r = grid.Shape().Radius();
  std::vector<CVec3> v(grid.Size(), CVec3::Zero());
  for (int i = 0; i < grid.Size(); i++)
  {
    const CVec3 n = grid.Normals()[i].cast<cplx>();
    for (int l = 1; l <= degree; l++)
    {
      for (int m = -l; m <= l; m++)
      {
        const CVec3 g = SphericalHarmonicGradient(l, m, grid.Directions()[i]) / r;
        v[i] += cu[ShIndex(l, m)] * g + cv[ShIndex(l, m)] * Cross(n, g);
      }
    }
  }
  return v;
}

}  // namespace maxsie::test

#endif  // MAXSIE_TESTS_HELPERS_HPP
