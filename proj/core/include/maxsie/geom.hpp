#ifndef MAXSIE_GEOM_HPP
#define MAXSIE_GEOM_HPP

#include <span>
#include <vector>

#include "maxsie/types.hpp"

namespace maxsie
{

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void GaussLegendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

enum class ShapeKind
{
  Sphere,
  Ellipsoid
};

// Parameterization of a closed surface as the image of the unit sphere under
// x = diag(a, b, c) * xhat. A sphere of radius R is the case a = b = c = R.
struct ShapeTag
{
  ShapeKind kind = ShapeKind::Sphere;
  Vec3 semi_axes = Vec3::Ones();

  double Radius() const { return semi_axes[0]; }
  bool operator==(const ShapeTag &) const = default;
};

//
// Quadrature grid on a smooth closed surface: tensor Gauss-Legendre (in cos theta) x
// trapezoid (in phi) on the reference sphere, pushed forward through the shape map.
// Node index is i = p * n_azimuthal + m for polar row p and azimuthal column m, with
// phi_m = 2 pi m / n_azimuthal. Poles are never nodes.
//
class SurfaceGrid
{
public:
  SurfaceGrid(const ShapeTag &shape, int n_polar, int n_azimuthal);

  int Size() const { return static_cast<int>(nodes_.size()); }
  int NPolar() const { return n_polar_; }
  int NAzimuthal() const { return n_azimuthal_; }
  const ShapeTag &Shape() const { return shape_; }
  bool IsSphere() const { return shape_.kind == ShapeKind::Sphere; }

  std::span<const Vec3> Nodes() const { return nodes_; }
  std::span<const Vec3> Normals() const { return normals_; }
  std::span<const double> Weights() const { return weights_; }

  // Unit tangents with t1 x t2 = n; t1 follows the image of d/dtheta.
  std::span<const Vec3> Tangent1() const { return tangent1_; }
  std::span<const Vec3> Tangent2() const { return tangent2_; }

  // Reference-sphere directions, weights (sum 4 pi) and area Jacobians.
  std::span<const Vec3> Directions() const { return directions_; }
  std::span<const double> ReferenceWeights() const { return ref_weights_; }
  std::span<const double> Jacobians() const { return jacobians_; }

  std::span<const double> PolarAngles() const { return theta_; }
  double AzimuthalAngle(int m) const;

  // Shape map and its differential quantities at an arbitrary reference direction.
  Vec3 Map(const Vec3 &xhat) const;
  Vec3 NormalAt(const Vec3 &xhat) const;
  double JacobianAt(const Vec3 &xhat) const;

  double Area() const;
  double Diameter() const { return 2.0 * shape_.semi_axes.maxCoeff(); }

  // Quadrature-weighted inner products and norms (<u, v> = sum w_i u_i conj(v_i)).
  double WeightedNorm(const CVector &scalar_field) const;

private:
  ShapeTag shape_;
  int n_polar_, n_azimuthal_;
  std::vector<double> theta_;
  std::vector<Vec3> nodes_, normals_, tangent1_, tangent2_, directions_;
  std::vector<double> weights_, ref_weights_, jacobians_;
};

SurfaceGrid BuildSphereGrid(double radius, int n_polar, int n_azimuthal);
SurfaceGrid BuildEllipsoidGrid(const Vec3 &semi_axes, int n_polar, int n_azimuthal);

}  // namespace maxsie

#endif  // MAXSIE_GEOM_HPP
