#include "maxsie/spherical_harmonics.hpp"

#include <algorithm>
#include <cmath>

#include "maxsie/errors.hpp"

namespace maxsie
{

namespace
{

// Normalized associated Legendre functions Pbar_l^m(cos theta), m >= 0, packed as
// (l, m) -> l (l + 1) / 2 + m, with their theta-derivatives.
struct LegendreTable
{
  int max_degree;
  std::vector<double> p, dp;

  static int Index(int l, int m) { return l * (l + 1) / 2 + m; }

  LegendreTable(int L, double ct, double st) : max_degree(L)
  {
    const int n = (L + 1) * (L + 2) / 2;
    p.assign(n, 0.0);
    dp.assign(n, 0.0);
    p[0] = 1.0 / std::sqrt(4.0 * pi);
    for (int m = 1; m <= L; m++)
    {
      p[Index(m, m)] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * p[Index(m - 1, m - 1)];
    }
    for (int m = 0; m < L; m++)
    {
      p[Index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * ct * p[Index(m, m)];
    }
    for (int m = 0; m <= L; m++)
    {
      for (int l = m + 2; l <= L; l++)
      {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                   (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        p[Index(l, m)] = a * (ct * p[Index(l - 1, m)] - b * p[Index(l - 2, m)]);
      }
    }
    for (int l = 0; l <= L; l++)
    {
      for (int m = 0; m <= l; m++)
      {
        const double prev =
            (l > m) ? std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (double(l) * l - double(m) * m)) *
                          p[Index(l - 1, m)]
                    : 0.0;
        dp[Index(l, m)] = (l * ct * p[Index(l, m)] - prev) / st;
      }
    }
  }
};

void SphericalAngles(const Vec3 &xhat, double &ct, double &st, double &phi)
{
  ct = std::clamp(xhat[2], -1.0, 1.0);
  st = std::hypot(xhat[0], xhat[1]);
  phi = std::atan2(xhat[1], xhat[0]);
}

}  // namespace

cplx SphericalHarmonic(int l, int m, const Vec3 &xhat)
{
  if (std::abs(m) > l)
  {
    return 0.0;
  }
  double ct, st, phi;
  SphericalAngles(xhat.normalized(), ct, st, phi);
  const int am = std::abs(m);
  const LegendreTable tab(l, ct, std::max(st, 1e-300));
  cplx y = tab.p[LegendreTable::Index(l, am)] * std::exp(I * double(am) * phi);
  if (m < 0)
  {
    y = ((am % 2) ? -1.0 : 1.0) * std::conj(y);
  }
  return y;
}

CVec3 SphericalHarmonicGradient(int l, int m, const Vec3 &xhat)
{
  if (std::abs(m) > l)
  {
    return CVec3::Zero();
  }
  double ct, st, phi;
  SphericalAngles(xhat.normalized(), ct, st, phi);
  if (st < 1e-14)
  {
    throw PreconditionError("surface gradient of Y_lm is not evaluated at the poles");
  }
  const int am = std::abs(m);
  const LegendreTable tab(l, ct, st);
  const cplx e = std::exp(I * double(am) * phi);
  const Vec3 th(ct * std::cos(phi), ct * std::sin(phi), -st);
  const Vec3 ph(-std::sin(phi), std::cos(phi), 0.0);
  CVec3 g = (tab.dp[LegendreTable::Index(l, am)] * e) * th.cast<cplx>() +
            (I * double(am) / st * tab.p[LegendreTable::Index(l, am)] * e) * ph.cast<cplx>();
  if (m < 0)
  {
    g = ((am % 2) ? -1.0 : 1.0) * g.conjugate();
  }
  return g;
}

double ZonalKernel(int max_degree, double t)
{
  double p0 = 1.0, p1 = t;
  double s = 1.0;
  if (max_degree >= 1)
  {
    s += 3.0 * t;
  }
  for (int l = 2; l <= max_degree; l++)
  {
    const double p2 = ((2.0 * l - 1.0) * t * p1 - (l - 1.0) * p0) / l;
    s += (2.0 * l + 1.0) * p2;
    p0 = p1;
    p1 = p2;
  }
  return s / (4.0 * pi);
}

int MaxResolvedDegree(const SurfaceGrid &grid)
{
  return std::min(grid.NPolar() - 1, (grid.NAzimuthal() - 1) / 2);
}

ShTransform::ShTransform(const SurfaceGrid &grid, int max_degree)
{
  if (!grid.IsSphere())
  {
    throw UnsupportedGeometryError("spherical-harmonic transforms require a sphere grid");
  }
  const int lmax = MaxResolvedDegree(grid);
  if (max_degree > lmax)
  {
    throw ConfigError("requested harmonic degree exceeds what the grid resolves");
  }
  max_degree_ = max_degree < 0 ? lmax : max_degree;
  radius_ = grid.Shape().Radius();
  ref_weights_.assign(grid.ReferenceWeights().begin(), grid.ReferenceWeights().end());
  normals_.assign(grid.Normals().begin(), grid.Normals().end());

  const int n = grid.Size();
  const int nc = NumCoefficients();
  basis_.resize(n, nc);
  gradient_.assign(3, CMatrix(n, nc));
  for (int i = 0; i < n; i++)
  {
    double ct, st, phi;
    SphericalAngles(grid.Directions()[i], ct, st, phi);
    const LegendreTable tab(max_degree_, ct, st);
    const Vec3 th(ct * std::cos(phi), ct * std::sin(phi), -st);
    const Vec3 ph(-std::sin(phi), std::cos(phi), 0.0);
    for (int l = 0; l <= max_degree_; l++)
    {
      for (int m = 0; m <= l; m++)
      {
        const cplx e = std::exp(I * double(m) * phi);
        const cplx y = tab.p[LegendreTable::Index(l, m)] * e;
        const cplx gth = tab.dp[LegendreTable::Index(l, m)] * e;
        const cplx gph = I * double(m) / st * y;
        basis_(i, ShIndex(l, m)) = y;
        for (int c = 0; c < 3; c++)
        {
          gradient_[c](i, ShIndex(l, m)) = gth * th[c] + gph * ph[c];
        }
        if (m > 0)
        {
          const double sgn = (m % 2) ? -1.0 : 1.0;
          basis_(i, ShIndex(l, -m)) = sgn * std::conj(y);
          for (int c = 0; c < 3; c++)
          {
            gradient_[c](i, ShIndex(l, -m)) = sgn * std::conj(gradient_[c](i, ShIndex(l, m)));
          }
        }
      }
    }
  }
}

CVector ShTransform::Analyze(const CVector &f) const
{
  const Eigen::Map<const RVector> w(ref_weights_.data(), ref_weights_.size());
  return basis_.adjoint() * (w.cast<cplx>().asDiagonal() * f);
}

CVector ShTransform::Synthesize(const CVector &coeffs) const
{
  return basis_ * coeffs;
}

std::vector<CVec3> ShTransform::SurfaceGradient(const CVector &f) const
{
  const CVector c = Analyze(f);
  std::vector<CVec3> g(f.size());
  for (int k = 0; k < 3; k++)
  {
    const CVector gk = gradient_[k] * c;
    for (int i = 0; i < gk.size(); i++)
    {
      g[i][k] = gk[i] / radius_;
    }
  }
  return g;
}

CVector ShTransform::SurfaceDivergence(const std::vector<CVec3> &v) const
{
  const int n = static_cast<int>(v.size());
  double vmax = 0.0;
  for (const auto &x : v)
  {
    vmax = std::max(vmax, x.norm());
  }
  const double tol = 1e-10 * std::max(1.0, vmax);
  for (int i = 0; i < n; i++)
  {
    if (std::abs(v[i].dot(normals_[i].cast<cplx>())) > tol)
    {
      throw PreconditionError("surface divergence needs a tangential field");
    }
  }
  // div v = -(1/R) sum_lm <v, grad Y_lm> Y_lm on the unit-sphere measure.
  CVector proj = CVector::Zero(NumCoefficients());
  for (int k = 0; k < 3; k++)
  {
    CVector vk(n);
    for (int i = 0; i < n; i++)
    {
      vk[i] = v[i][k] * ref_weights_[i];
    }
    proj += gradient_[k].adjoint() * vk;
  }
  return -(basis_ * proj) / radius_;
}

CVector ShAnalyze(const SurfaceGrid &grid, const CVector &f, int max_degree)
{
  return ShTransform(grid, max_degree).Analyze(f);
}

CVector ShSynthesize(const SurfaceGrid &grid, const CVector &coeffs, int max_degree)
{
  return ShTransform(grid, max_degree).Synthesize(coeffs);
}

CVector SurfaceDivergence(const SurfaceGrid &grid, const std::vector<CVec3> &v)
{
  return ShTransform(grid).SurfaceDivergence(v);
}

std::vector<CVec3> SurfaceGradient(const SurfaceGrid &grid, const CVector &f)
{
  return ShTransform(grid).SurfaceGradient(f);
}

}  // namespace maxsie
