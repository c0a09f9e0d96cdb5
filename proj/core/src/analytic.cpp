#include "maxsie/analytic.hpp"

#include <cmath>
#include <sstream>

#include "maxsie/errors.hpp"

namespace maxsie
{

LayerPotential SphereLayerPotential(cplx k, double r)
{
  if (!(r >= 0.0))
  {
    throw PreconditionError("layer potential radius must be non-negative");
  }
  if (k == 0.0)
  {
    return {r <= 1.0 ? 1.0 : 1.0 / r, true};
  }
  const cplx e = std::exp(I * k);
  if (r >= 1.0)
  {
    return {std::exp(I * k * r) / r * (std::sin(k) / k), false};
  }
  // sin(kr)/r -> k as r -> 0
  const cplx s = r == 0.0 ? k : std::sin(k * r) / r;
  return {s * e / k, false};
}

cplx SphereLayerPotentialDerivative(cplx k, double r, bool outside)
{
  if (!(r >= 0.0))
  {
    throw PreconditionError("layer potential radius must be non-negative");
  }
  const bool ext = r > 1.0 || (r == 1.0 && outside);
  if (k == 0.0)
  {
    return ext ? cplx(-1.0 / (r * r)) : cplx(0.0);
  }
  if (ext)
  {
    return (I * k - 1.0 / r) * std::exp(I * k * r) / r * (std::sin(k) / k);
  }
  if (r == 0.0)
  {
    return 0.0;
  }
  return (k * std::cos(k * r) / r - std::sin(k * r) / (r * r)) * std::exp(I * k) / k;
}

cplx SingularResidual(double eps_plus, double eps_minus, double k_plus, double k_minus)
{
  const cplx em = std::exp(I * k_minus), ep = std::exp(I * k_plus);
  return eps_plus * std::sin(k_minus) * em * (I - 1.0 / k_minus) -
         eps_minus * ep * (std::cos(k_plus) - std::sin(k_plus) / k_plus);
}

std::array<cplx, 2> SingularResidualGradient(double eps_plus, double eps_minus, double k_plus, double k_minus)
{
  const cplx em = std::exp(I * k_minus), ep = std::exp(I * k_plus);
  const double sp = std::sin(k_plus), cp = std::cos(k_plus), sm = std::sin(k_minus);
  const cplx d_plus = -eps_minus * ep *
                      (I * (cp - sp / k_plus) - sp - cp / k_plus + sp / (k_plus * k_plus));
  const cplx d_minus = eps_plus * (em * em * (I - 1.0 / k_minus) + sm * em / (k_minus * k_minus));
  return {d_plus, d_minus};
}

SingularPair FindSingularPair(double eps_plus, double eps_minus, double guess_k_plus, double guess_k_minus,
                              int max_iterations, double tolerance)
{
  if (!(guess_k_plus > 0.0) || !(guess_k_minus > 0.0))
  {
    throw PreconditionError("singular-pair guess must have positive components");
  }
  std::vector<RootNotFoundError::Iterate> trace;
  double kp = guess_k_plus, km = guess_k_minus;
  cplx res = SingularResidual(eps_plus, eps_minus, kp, km);
  trace.push_back({kp, km, std::abs(res)});
  for (int it = 1; it <= max_iterations; it++)
  {
    if (std::abs(res) <= tolerance)
    {
      return {eps_plus, eps_minus, kp, km, res, it - 1};
    }
    const auto g = SingularResidualGradient(eps_plus, eps_minus, kp, km);
    Eigen::Matrix2d jac;
    jac << g[0].real(), g[1].real(), g[0].imag(), g[1].imag();
    const Eigen::Vector2d step = jac.fullPivLu().solve(Eigen::Vector2d(-res.real(), -res.imag()));
    if (!step.allFinite())
    {
      break;
    }
    double t = 1.0;
    double np = kp + step[0], nm = km + step[1];
    cplx nres = SingularResidual(eps_plus, eps_minus, np, nm);
    for (int h = 0; h < 40 && (np <= 0.0 || nm <= 0.0 || std::abs(nres) > std::abs(res)); h++)
    {
      t *= 0.5;
      np = kp + t * step[0];
      nm = km + t * step[1];
      nres = SingularResidual(eps_plus, eps_minus, np, nm);
    }
    if (np <= 0.0 || nm <= 0.0)
    {
      trace.push_back({np, nm, std::abs(nres)});
      throw RootNotFoundError("Newton iterate left the positive quadrant", std::move(trace));
    }
    kp = np;
    km = nm;
    res = nres;
    trace.push_back({kp, km, std::abs(res)});
  }
  if (std::abs(res) <= tolerance)
  {
    return {eps_plus, eps_minus, kp, km, res, max_iterations};
  }
  std::ostringstream msg;
  msg << "singular pair not found after " << max_iterations << " iterations (|residual| " << std::abs(res) << ")";
  throw RootNotFoundError(msg.str(), std::move(trace));
}

std::vector<SingularPair> ScanSingularPairs(double eps_plus, double eps_minus, std::array<double, 2> k_plus_range,
                                            std::array<double, 2> k_minus_range, int cells)
{
  if (!(k_plus_range[0] > 0.0) || !(k_minus_range[0] > 0.0) || !(k_plus_range[1] > k_plus_range[0]) ||
      !(k_minus_range[1] > k_minus_range[0]) || cells < 1)
  {
    throw PreconditionError("scan ranges must be positive and increasing");
  }
  const double hp = (k_plus_range[1] - k_plus_range[0]) / cells;
  const double hm = (k_minus_range[1] - k_minus_range[0]) / cells;
  std::vector<cplx> vals((cells + 1) * (cells + 1));
  auto at = [&](int i, int j) -> cplx & { return vals[i * (cells + 1) + j]; };
  for (int i = 0; i <= cells; i++)
  {
    for (int j = 0; j <= cells; j++)
    {
      at(i, j) = SingularResidual(eps_plus, eps_minus, k_plus_range[0] + i * hp, k_minus_range[0] + j * hm);
    }
  }
  std::vector<SingularPair> roots;
  for (int i = 0; i < cells; i++)
  {
    for (int j = 0; j < cells; j++)
    {
      const cplx c[4] = {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
      bool re_pos = false, re_neg = false, im_pos = false, im_neg = false;
      for (const cplx &v : c)
      {
        (v.real() >= 0.0 ? re_pos : re_neg) = true;
        (v.imag() >= 0.0 ? im_pos : im_neg) = true;
      }
      if (!(re_pos && re_neg && im_pos && im_neg))
      {
        continue;
      }
      SingularPair p;
      try
      {
        p = FindSingularPair(eps_plus, eps_minus, k_plus_range[0] + (i + 0.5) * hp,
                             k_minus_range[0] + (j + 0.5) * hm);
      }
      catch (const RootNotFoundError &)
      {
        continue;
      }
      if (p.k_plus < k_plus_range[0] || p.k_plus > k_plus_range[1] || p.k_minus < k_minus_range[0] ||
          p.k_minus > k_minus_range[1])
      {
        continue;
      }
      bool dup = false;
      for (const auto &q : roots)
      {
        dup = dup || (std::abs(q.k_plus - p.k_plus) < 1e-8 && std::abs(q.k_minus - p.k_minus) < 1e-8);
      }
      if (!dup)
      {
        roots.push_back(p);
      }
    }
  }
  return roots;
}

TraceField SingularNullTrace(const SurfaceGrid &grid)
{
  if (!grid.IsSphere() || std::abs(grid.Shape().Radius() - 1.0) > 1e-14)
  {
    throw UnsupportedGeometryError("the singular null trace lives on the unit sphere");
  }
  TraceField t = TraceField::Zero(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    t.e[i] = grid.Normals()[i].cast<cplx>();
  }
  return t;
}

}  // namespace maxsie
