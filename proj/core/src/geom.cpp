#include "maxsie/geom.hpp"

#include <cmath>
#include <string>

#include "maxsie/errors.hpp"

namespace maxsie
{

void GaussLegendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; k++)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; k++)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
  {
    nodes[n / 2] = 0.0;
  }
}

SurfaceGrid::SurfaceGrid(const ShapeTag &shape, int n_polar, int n_azimuthal)
  : shape_(shape), n_polar_(n_polar), n_azimuthal_(n_azimuthal)
{
  if (n_polar < 4 || n_azimuthal < 8)
  {
    throw ConfigError("grid orders must satisfy n_polar >= 4 and n_azimuthal >= 8 (got " +
                      std::to_string(n_polar) + ", " + std::to_string(n_azimuthal) + ")");
  }
  for (int c = 0; c < 3; c++)
  {
    if (!(shape.semi_axes[c] > 0.0) || !std::isfinite(shape.semi_axes[c]))
    {
      throw ConfigError("surface semi-axes must be positive and finite");
    }
  }

  std::vector<double> t, wt;
  GaussLegendre(n_polar, t, wt);
  // Rows ordered north to south.
  theta_.resize(n_polar);
  std::vector<double> row_weight(n_polar);
  for (int p = 0; p < n_polar; p++)
  {
    theta_[p] = std::acos(t[n_polar - 1 - p]);
    row_weight[p] = wt[n_polar - 1 - p];
  }

  const int n = n_polar * n_azimuthal;
  nodes_.resize(n);
  normals_.resize(n);
  tangent1_.resize(n);
  tangent2_.resize(n);
  directions_.resize(n);
  weights_.resize(n);
  ref_weights_.resize(n);
  jacobians_.resize(n);
  const double dphi = 2.0 * pi / n_azimuthal;
  const Eigen::DiagonalMatrix<double, 3> axes(shape_.semi_axes);
  for (int p = 0; p < n_polar; p++)
  {
    const double st = std::sin(theta_[p]), ct = std::cos(theta_[p]);
    for (int m = 0; m < n_azimuthal; m++)
    {
      const int i = p * n_azimuthal + m;
      const double phi = m * dphi;
      const double sp = std::sin(phi), cp = std::cos(phi);
      const Vec3 xhat(st * cp, st * sp, ct);
      const Vec3 dtheta(ct * cp, ct * sp, -st);
      directions_[i] = xhat;
      nodes_[i] = Map(xhat);
      normals_[i] = NormalAt(xhat);
      jacobians_[i] = JacobianAt(xhat);
      ref_weights_[i] = row_weight[p] * dphi;
      weights_[i] = ref_weights_[i] * jacobians_[i];
      Vec3 t1 = axes * dtheta;
      t1 -= normals_[i] * normals_[i].dot(t1);
      tangent1_[i] = t1.normalized();
      tangent2_[i] = normals_[i].cross(tangent1_[i]);
    }
  }
}

double SurfaceGrid::AzimuthalAngle(int m) const
{
  return 2.0 * pi * m / n_azimuthal_;
}

Vec3 SurfaceGrid::Map(const Vec3 &xhat) const
{
  return shape_.semi_axes.cwiseProduct(xhat);
}

Vec3 SurfaceGrid::NormalAt(const Vec3 &xhat) const
{
  return xhat.cwiseQuotient(shape_.semi_axes).normalized();
}

double SurfaceGrid::JacobianAt(const Vec3 &xhat) const
{
  // Area scaling of a linear map: |det A| * |A^{-T} xhat|.
  const Vec3 &a = shape_.semi_axes;
  return a.prod() * xhat.cwiseQuotient(a).norm();
}

double SurfaceGrid::Area() const
{
  double s = 0.0;
  for (double w : weights_)
  {
    s += w;
  }
  return s;
}

double SurfaceGrid::WeightedNorm(const CVector &scalar_field) const
{
  double s = 0.0;
  for (int i = 0; i < Size(); i++)
  {
    s += weights_[i] * std::norm(scalar_field[i]);
  }
  return std::sqrt(s);
}

SurfaceGrid BuildSphereGrid(double radius, int n_polar, int n_azimuthal)
{
  if (!(radius > 0.0))
  {
    throw ConfigError("sphere radius must be positive");
  }
  return SurfaceGrid(ShapeTag{ShapeKind::Sphere, Vec3::Constant(radius)}, n_polar, n_azimuthal);
}

SurfaceGrid BuildEllipsoidGrid(const Vec3 &semi_axes, int n_polar, int n_azimuthal)
{
  if ((semi_axes.array() <= 0.0).any())
  {
    throw ConfigError("ellipsoid semi-axes must all be positive");
  }
  return SurfaceGrid(ShapeTag{ShapeKind::Ellipsoid, semi_axes}, n_polar, n_azimuthal);
}

}  // namespace maxsie
