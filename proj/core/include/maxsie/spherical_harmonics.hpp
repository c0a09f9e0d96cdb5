#ifndef MAXSIE_SPHERICAL_HARMONICS_HPP
#define MAXSIE_SPHERICAL_HARMONICS_HPP

#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/types.hpp"

namespace maxsie
{

// Index of (l, m), |m| <= l, in a packed coefficient vector.
inline int ShIndex(int l, int m)
{
  return l * l + l + m;
}

// Orthonormal complex spherical harmonic Y_l^m (Condon-Shortley phase) at a unit
// direction, together with its surface gradient on the unit sphere (Cartesian).
cplx SphericalHarmonic(int l, int m, const Vec3 &xhat);
CVec3 SphericalHarmonicGradient(int l, int m, const Vec3 &xhat);

// sum_{l <= L} (2l + 1) / (4 pi) P_l(t): the reproducing kernel of degree-L
// harmonics on the unit sphere.
double ZonalKernel(int max_degree, double t);

//
// Discrete spherical-harmonic analysis on a sphere grid. Coefficients are with
// respect to the unit-sphere measure of directions, so f = 1 gives c_00 = sqrt(4 pi)
// for every radius. Differential operators use the grid radius.
//
class ShTransform
{
public:
  // max_degree < 0 selects the largest degree the grid resolves exactly.
  explicit ShTransform(const SurfaceGrid &grid, int max_degree = -1);

  int MaxDegree() const { return max_degree_; }
  int NumCoefficients() const { return (max_degree_ + 1) * (max_degree_ + 1); }

  CVector Analyze(const CVector &f) const;
  CVector Synthesize(const CVector &coeffs) const;

  // Tangential field (3 complex components per node, stacked node-major) for the
  // surface gradient of a scalar field.
  std::vector<CVec3> SurfaceGradient(const CVector &f) const;

  // Surface divergence of a tangential field; throws PreconditionError when
  // |v . n| > 1e-10 * max(1, max |v|) at some node.
  CVector SurfaceDivergence(const std::vector<CVec3> &v) const;

  const CMatrix &Basis() const { return basis_; }

private:
  std::vector<double> ref_weights_;
  std::vector<Vec3> normals_;
  int max_degree_;
  double radius_;
  CMatrix basis_;                  // N x ncoef
  std::vector<CMatrix> gradient_;  // 3 matrices, N x ncoef (unit sphere)
};

// Largest degree exactly resolved by the tensor grid.
int MaxResolvedDegree(const SurfaceGrid &grid);

// Discrete spherical-harmonic coefficients of a sphere-grid field; throws
// UnsupportedGeometryError for non-sphere grids.
CVector ShAnalyze(const SurfaceGrid &grid, const CVector &f, int max_degree = -1);
CVector ShSynthesize(const SurfaceGrid &grid, const CVector &coeffs, int max_degree = -1);
CVector SurfaceDivergence(const SurfaceGrid &grid, const std::vector<CVec3> &v);
std::vector<CVec3> SurfaceGradient(const SurfaceGrid &grid, const CVector &f);

}  // namespace maxsie

#endif  // MAXSIE_SPHERICAL_HARMONICS_HPP
