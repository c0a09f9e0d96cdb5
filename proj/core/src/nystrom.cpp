#include "maxsie/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include "maxsie/spherical_harmonics.hpp"

namespace maxsie
{

namespace
{

Vec3 RotateY(const Vec3 &v, double c, double s)
{
  return {c * v[0] + s * v[2], v[1], -s * v[0] + c * v[2]};
}

Vec3 RotateZ(const Vec3 &v, double c, double s)
{
  return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
}

}  // namespace

RotatedQuadrature::RotatedQuadrature(const SurfaceGrid &grid, int polar_points, int azimuthal_points)
  : grid_(&grid), degree_(MaxResolvedDegree(grid))
{
  const int nt = polar_points > 0 ? polar_points : grid.NPolar();
  const int np = azimuthal_points > 0 ? azimuthal_points : grid.NAzimuthal();
  std::vector<double> t, wt;
  GaussLegendre(nt, t, wt);
  for (int a = 0; a < nt; a++)
  {
    const double th = 0.5 * pi * (t[a] + 1.0);
    const double w = 0.5 * pi * wt[a] * std::sin(th) * 2.0 * pi / np;
    for (int b = 0; b < np; b++)
    {
      const double ph = 2.0 * pi * b / np;
      frame_dirs_.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      frame_weights_.push_back(w);
    }
  }
}

void RotatedQuadrature::TargetPoints(int target, QuadraturePoints &out) const
{
  const int na = grid_->NAzimuthal();
  const int p = target / na, m = target % na;
  const double th = grid_->PolarAngles()[p], ph = grid_->AzimuthalAngle(m);
  const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
  const int q = NumPoints();
  out.y.resize(q);
  out.normal.resize(q);
  out.weight.resize(q);
  for (int k = 0; k < q; k++)
  {
    const Vec3 d = RotateZ(RotateY(frame_dirs_[k], ct, st), cp, sp);
    out.y[k] = grid_->Map(d);
    out.normal[k] = grid_->NormalAt(d);
    out.weight[k] = frame_weights_[k] * grid_->JacobianAt(d);
  }
}

RMatrix RotatedQuadrature::RowInterpolation(int p) const
{
  const int n = grid_->Size(), q = NumPoints();
  const double th = grid_->PolarAngles()[p];
  const double ct = std::cos(th), st = std::sin(th);
  RMatrix yq(q, 3), xg(3, n);
  for (int k = 0; k < q; k++)
  {
    yq.row(k) = RotateY(frame_dirs_[k], ct, st).transpose();
  }
  for (int j = 0; j < n; j++)
  {
    xg.col(j) = grid_->Directions()[j];
  }
  // Reproducing kernel sum_{l <= L} (2l+1)/(4 pi) P_l(t), one target direction at a
  // time so the recurrence stays in cache.
  const RMatrix t = yq * xg;
  RMatrix b(q, n);
  std::vector<double> p0(n), p1(n), s(n), tt(n);
  const double *w = grid_->ReferenceWeights().data();
  for (int k = 0; k < q; k++)
  {
    for (int j = 0; j < n; j++)
    {
      tt[j] = std::clamp(t(k, j), -1.0, 1.0);
      p0[j] = 1.0;
      p1[j] = tt[j];
      s[j] = 1.0 + 3.0 * tt[j];
    }
    for (int l = 2; l <= degree_; l++)
    {
      const double c1 = (2.0 * l - 1.0) / l, c0 = (l - 1.0) / l, c2 = 2.0 * l + 1.0;
      for (int j = 0; j < n; j++)
      {
        const double p2 = c1 * tt[j] * p1[j] - c0 * p0[j];
        s[j] += c2 * p2;
        p0[j] = p1[j];
        p1[j] = p2;
      }
    }
    for (int j = 0; j < n; j++)
    {
      b(k, j) = s[j] * w[j] / (4.0 * pi);
    }
  }
  return b;
}

void RotatedQuadrature::Integrate(int channels, const KernelFn &kernel, const SinkFn &sink) const
{
  const int n = grid_->Size(), na = grid_->NAzimuthal(), q = NumPoints();
  QuadraturePoints pts;
  CMatrix values(channels, q);
  RMatrix kv(2 * na * channels, q);
  CMatrix rows(channels, n);
  for (int p = 0; p < grid_->NPolar(); p++)
  {
    const RMatrix b = RowInterpolation(p);
    for (int m = 0; m < na; m++)
    {
      TargetPoints(p * na + m, pts);
      values.setZero();
      kernel(p * na + m, pts, values);
      kv.middleRows(2 * m * channels, channels) = values.real();
      kv.middleRows((2 * m + 1) * channels, channels) = values.imag();
    }
    const RMatrix r = kv * b;
    for (int m = 0; m < na; m++)
    {
      const auto re = r.middleRows(2 * m * channels, channels);
      const auto im = r.middleRows((2 * m + 1) * channels, channels);
      // Row-frame column (p', m'') belongs to grid column (p', m'' + m).
      for (int pp = 0; pp < grid_->NPolar(); pp++)
      {
        for (int mm = 0; mm < na; mm++)
        {
          const int src = pp * na + mm, dst = pp * na + (mm + m) % na;
          for (int c = 0; c < channels; c++)
          {
            rows(c, dst) = cplx(re(c, src), im(c, src));
          }
        }
      }
      sink(p * na + m, rows);
    }
  }
}

}  // namespace maxsie
