#ifndef MAXSIE_NYSTROM_HPP
#define MAXSIE_NYSTROM_HPP

#include <functional>
#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/types.hpp"

namespace maxsie
{

// Surface points of the product rule attached to one target node.
struct QuadraturePoints
{
  std::vector<Vec3> y;
  std::vector<Vec3> normal;
  std::vector<double> weight;  // surface measure, Jacobian included
};

//
// Singular Nystrom quadrature on a parameterized surface. Around every target the
// reference sphere is re-parameterized in polar coordinates centred on the target
// (Gauss-Legendre in the polar angle, trapezoid in azimuth), which turns 1/r kernels
// into smooth integrands and removes odd principal-value parts by symmetry. Densities
// are carried from the grid to the rotated points by the degree-L reproducing kernel of
// spherical harmonics, so each target yields a dense row over the grid nodes.
//
// The rotated rule of a target in row p, column m is the row-p rule turned by phi_m
// about the polar axis, so interpolation weights are computed once per grid row.
//
class RotatedQuadrature
{
public:
  // Non-positive sizes select n_polar x n_azimuthal.
  explicit RotatedQuadrature(const SurfaceGrid &grid, int polar_points = 0, int azimuthal_points = 0);

  const SurfaceGrid &Grid() const { return *grid_; }
  int NumPoints() const { return static_cast<int>(frame_dirs_.size()); }
  int Degree() const { return degree_; }

  void TargetPoints(int target, QuadraturePoints &out) const;

  // values: channels x NumPoints, kernel times weight at each rotated point.
  using KernelFn = std::function<void(int target, const QuadraturePoints &, CMatrix &values)>;
  // rows: channels x N in grid column order.
  using SinkFn = std::function<void(int target, const CMatrix &rows)>;

  // Calls kernel for every target and sink with the resulting operator rows; targets
  // are visited row by row, in node order.
  void Integrate(int channels, const KernelFn &kernel, const SinkFn &sink) const;

  // Interpolation matrix from grid values to the rotated points of row p, target column 0.
  RMatrix RowInterpolation(int p) const;

private:
  const SurfaceGrid *grid_;
  int degree_;
  std::vector<Vec3> frame_dirs_;  // rule around the north pole
  std::vector<double> frame_weights_;
};

}  // namespace maxsie

#endif  // MAXSIE_NYSTROM_HPP
