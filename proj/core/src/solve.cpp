#include "maxsie/solve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxsie/errors.hpp"
#include "maxsie/kernels.hpp"
#include "maxsie/spherical_harmonics.hpp"

namespace maxsie
{

void PlaneWave::Validate() const
{
  if (std::abs(direction.norm() - 1.0) > 1e-12 || std::abs(polarization.norm() - 1.0) > 1e-12)
  {
    throw InputError("plane-wave direction and polarization must be unit vectors");
  }
  if (std::abs(direction.dot(polarization)) > 1e-12)
  {
    throw InputError("polarization must be orthogonal to the propagation direction");
  }
}

void PlaneWaveFields(const MediumParams &medium, const PlaneWave &wave, const Vec3 &x, CVec3 &e, CVec3 &h)
{
  const cplx phase = std::exp(I * medium.KPlus() * wave.direction.dot(x));
  e = phase * wave.polarization.cast<cplx>();
  h = (std::sqrt(medium.eps_plus / medium.mu_plus) * phase) * wave.direction.cross(wave.polarization).cast<cplx>();
}

IncidentField IncidentFromTraces(const SurfaceGrid &grid, const MediumParams &medium, const TraceField &inc)
{
  medium.Validate();
  const int n = grid.Size();
  IncidentField f;
  f.e_inc = inc.e;
  f.h_inc = inc.h;
  f.e_i.resize(n);
  f.h_i.resize(n);
  const cplx ep = medium.eps_plus, em = medium.eps_minus;
  const cplx mp = medium.mu_plus, mm = medium.mu_minus;
  const cplx et = 2.0 * ep / (ep + em), en = 2.0 * em / (ep + em);
  const cplx ht = 2.0 * mp / (mp + mm), hn = 2.0 * mm / (mp + mm);
  for (int i = 0; i < n; i++)
  {
    const CVec3 nn = grid.Normals()[i].cast<cplx>();
    const cplx e_n = inc.e[i].transpose() * nn, h_n = inc.h[i].transpose() * nn;
    f.e_i[i] = et * (inc.e[i] - e_n * nn) + en * e_n * nn;
    f.h_i[i] = ht * (inc.h[i] - h_n * nn) + hn * h_n * nn;
  }
  f.rhs = ToDofs(grid, TraceField{f.e_i, f.h_i});
  return f;
}

IncidentField IncidentPlaneWave(const SurfaceGrid &grid, const MediumParams &medium, const Vec3 &direction,
                                const Vec3 &polarization)
{
  const PlaneWave wave{direction, polarization};
  wave.Validate();
  medium.Validate();
  TraceField inc = TraceField::Zero(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    PlaneWaveFields(medium, wave, grid.Nodes()[i], inc.e[i], inc.h[i]);
  }
  return IncidentFromTraces(grid, medium, inc);
}

BlockSystem BuildSystem(const DenseBlockOperator &m, const DenseBlockOperator &j, cplx xi)
{
  if (m.matrix.rows() != j.matrix.rows() || m.matrix.cols() != j.matrix.cols() || !(m.shape == j.shape) ||
      m.n_polar != j.n_polar || m.n_azimuthal != j.n_azimuthal)
  {
    throw AssemblyError("M and J were assembled on different grids");
  }
  const MediumParams &a = m.medium, &b = j.medium;
  if (a.eps_plus != b.eps_plus || a.eps_minus != b.eps_minus || a.mu_plus != b.mu_plus ||
      a.mu_minus != b.mu_minus || a.omega != b.omega)
  {
    throw AssemblyError("M and J were assembled for different media");
  }
  BlockSystem s;
  s.matrix = m.matrix + xi * j.matrix;
  s.matrix.diagonal().array() += 1.0;
  s.blocks = m.blocks;
  s.shape = m.shape;
  s.n_polar = m.n_polar;
  s.n_azimuthal = m.n_azimuthal;
  s.medium = m.medium;
  s.xi = xi;
  return s;
}

BlockSystem AssembleBlockSystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi)
{
  BlockSystem s;
  s.matrix = AssembleSystem(grid, medium, xi);
  s.blocks = BlockMap(grid.Size());
  s.shape = grid.Shape();
  s.n_polar = grid.NPolar();
  s.n_azimuthal = grid.NAzimuthal();
  s.medium = medium;
  s.xi = xi;
  return s;
}

namespace
{

RVector GridDofWeights(const SurfaceGrid &grid)
{
  const RVector w = Eigen::Map<const RVector>(grid.Weights().data(), grid.Size());
  return DofWeights(w);
}

double WeightedNorm(const CVector &x, const RVector &w)
{
  return std::sqrt((x.cwiseAbs2().array() * w.array()).sum());
}

void Finish(const SurfaceGrid &grid, const MediumParams &medium, SolveReport &rep)
{
  rep.trace = FromDofs(grid, rep.dofs);
  const ConstraintResidual c = ConstraintResiduals(grid, medium, rep.trace);
  const double scale = TraceNorm(grid, rep.trace);
  rep.constraint_norms = {grid.WeightedNorm(c.r1) / scale, grid.WeightedNorm(c.r2) / scale};
}

void CheckSingular(SolveReport &rep)
{
  rep.condition_estimate = rep.largest_singular_value / rep.smallest_singular_value;
  if (!(rep.smallest_singular_value >= kNearSingularRatio * rep.largest_singular_value))
  {
    std::ostringstream msg;
    msg << "system is numerically singular: sigma_min = " << rep.smallest_singular_value
        << ", sigma_max = " << rep.largest_singular_value;
    throw NearSingularSystemError(msg.str(), rep.smallest_singular_value, rep.largest_singular_value);
  }
}

}  // namespace

double TraceNorm(const SurfaceGrid &grid, const TraceField &t)
{
  double s = 0.0;
  for (int i = 0; i < grid.Size(); i++)
  {
    s += grid.Weights()[i] * (t.e[i].squaredNorm() + t.h[i].squaredNorm());
  }
  return std::sqrt(s);
}

double RelativeTraceError(const SurfaceGrid &grid, const TraceField &t, const TraceField &reference)
{
  TraceField d = TraceField::Zero(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    d.e[i] = t.e[i] - reference.e[i];
    d.h[i] = t.h[i] - reference.h[i];
  }
  return TraceNorm(grid, d) / TraceNorm(grid, reference);
}

SolveReport Solve(const BlockSystem &system, const IncidentField &rhs)
{
  const SurfaceGrid grid = system.Grid();
  if (rhs.rhs.size() != system.matrix.rows())
  {
    throw AssemblyError("right-hand side does not match the system size");
  }
  const RVector w = GridDofWeights(grid);
  SolveReport rep;
  rep.xi_used = system.xi;
  CMatrix factors = system.matrix;
  const InplaceLu lu(factors);
  rep.largest_singular_value = WeightedLargestSingularValue(system.matrix, w);
  rep.smallest_singular_value = WeightedSmallestSingularValue(lu, w);
  CheckSingular(rep);
  rep.dofs = lu.solve(rhs.rhs);
  rep.residual_norm = WeightedNorm(system.matrix * rep.dofs - rhs.rhs, w) / WeightedNorm(rhs.rhs, w);
  Finish(grid, system.medium, rep);
  return rep;
}

SolveReport SolveLean(const SurfaceGrid &grid, const MediumParams &medium, cplx xi, const IncidentField &rhs)
{
  const RVector w = GridDofWeights(grid);
  SolveReport rep;
  rep.xi_used = xi;
  {
    CMatrix a = AssembleSystem(grid, medium, xi);
    rep.largest_singular_value = WeightedLargestSingularValue(a, w);
    const InplaceLu lu(a);
    rep.smallest_singular_value = WeightedSmallestSingularValue(lu, w);
    CheckSingular(rep);
    rep.dofs = lu.solve(rhs.rhs);
  }
  rep.residual_norm = WeightedNorm(ApplySystem(grid, medium, xi, rep.dofs) - rhs.rhs, w) / WeightedNorm(rhs.rhs, w);
  Finish(grid, medium, rep);
  return rep;
}

ConditionReport ConditionDiagnostics(const BlockSystem &system)
{
  const SurfaceGrid grid = system.Grid();
  const SingularValueExtremes e = MatrixExtremes(system.matrix, GridDofWeights(grid));
  ConditionReport r;
  r.sigma_min = e.sigma_min;
  r.sigma_max = e.sigma_max;
  r.condition = e.Condition();
  r.dense = e.dense;
  r.near_singular = !(e.sigma_min >= kNearSingularRatio * e.sigma_max);
  return r;
}

XiRule ConstantXi(cplx xi)
{
  return [xi](double) { return xi; };
}

std::vector<SweepRow> FrequencySweep(const SurfaceGrid &grid, const MediumParams &medium_template,
                                     const std::vector<double> &omegas, const XiRule &xi_rule,
                                     const PlaneWave &wave)
{
  if (omegas.empty())
  {
    throw ConfigError("frequency sweep needs at least one omega");
  }
  for (double w : omegas)
  {
    if (!(w > 0.0))
    {
      throw ConfigError("sweep frequencies must be positive");
    }
  }
  wave.Validate();
  const RVector w = GridDofWeights(grid);
  std::vector<SweepRow> rows;
  for (double omega : omegas)
  {
    SweepRow row;
    row.omega = omega;
    try
    {
      const MediumParams medium = medium_template.WithOmega(omega);
      row.xi = xi_rule(omega);
      const DenseBlockOperator m = AssembleM(grid, medium);
      const DenseBlockOperator j = AssembleJ(grid, medium);
      row.j_norm = WeightedLargestSingularValue(j.matrix, w);
      const BlockSystem sys = BuildSystem(m, j, row.xi);
      const ConditionReport cond = ConditionDiagnostics(sys);
      row.sigma_min = cond.sigma_min;
      row.sigma_max = cond.sigma_max;
      row.cond = cond.condition;
      if (cond.near_singular)
      {
        row.status = "near_singular";
        rows.push_back(row);
        continue;
      }
      const IncidentField inc = IncidentPlaneWave(grid, medium, wave.direction, wave.polarization);
      const SolveReport rep = Solve(sys, inc);
      row.constraint_r1 = rep.constraint_norms.first;
      row.constraint_r2 = rep.constraint_norms.second;
      row.status = "ok";
    }
    catch (const NearSingularSystemError &e)
    {
      row.sigma_min = e.SigmaMin();
      row.sigma_max = e.SigmaMax();
      row.cond = e.SigmaMax() / e.SigmaMin();
      row.status = "near_singular";
    }
    catch (const Error &e)
    {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<FieldSample> EvaluateScatteredField(const SurfaceGrid &grid, const MediumParams &medium,
                                                const TraceField &trace, const std::vector<Vec3> &points)
{
  medium.Validate();
  const cplx k = medium.KPlus();
  const cplx ce = I / (medium.omega * medium.eps_plus), cm = -I / (medium.omega * medium.mu_plus);
  // The traces are interpolated onto a three times finer rule; the coarse rule alone
  // loses digits once a probe point is within a diameter of the surface.
  const SurfaceGrid fine(grid.Shape(), 3 * grid.NPolar(), 3 * grid.NAzimuthal());
  const int n = fine.Size(), nc = grid.Size(), degree = MaxResolvedDegree(grid);
  std::vector<CVec3> ne(n), nh(n);
  for (int i = 0; i < n; i++)
  {
    CVec3 e = CVec3::Zero(), h = CVec3::Zero();
    for (int j = 0; j < nc; j++)
    {
      const double t = std::clamp(fine.Directions()[i].dot(grid.Directions()[j]), -1.0, 1.0);
      const double bj = ZonalKernel(degree, t) * grid.ReferenceWeights()[j];
      e += bj * trace.e[j];
      h += bj * trace.h[j];
    }
    const CVec3 nn = fine.Normals()[i].cast<cplx>();
    ne[i] = Cross(nn, e) * fine.Weights()[i];
    nh[i] = Cross(nn, h) * fine.Weights()[i];
  }
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const Vec3 &x : points)
  {
    FieldSample s;
    s.point = x;
    s.e.setZero();
    s.h.setZero();
    double dmin = INFINITY;
    for (int j = 0; j < n; j++)
    {
      const Vec3 d = x - fine.Nodes()[j];
      const double r = d.norm();
      dmin = std::min(dmin, r);
      const Vec3 u = d / r;
      const cplx g = HelmholtzGreenRadial(k, r);
      const cplx a = I * k - 1.0 / r;
      const cplx g1 = a * g;                          // G'
      const cplx g2 = (a * a + 1.0 / (r * r)) * g;    // G''
      const CVec3 grad = g1 * u.cast<cplx>();
      // curl curl (G J) = k^2 G J + Hess G J.
      auto curlcurl = [&](const CVec3 &jv) {
        const cplx uj = u.cast<cplx>().transpose() * jv;
        return CVec3(k * k * g * jv + g2 * uj * u.cast<cplx>() + (g1 / r) * (jv - uj * u.cast<cplx>()));
      };
      s.e += Cross(grad, ne[j]) + ce * curlcurl(nh[j]);
      s.h += Cross(grad, nh[j]) + cm * curlcurl(ne[j]);
    }
    s.near_surface = dmin < 0.1 * grid.Diameter();
    out.push_back(s);
  }
  return out;
}

}  // namespace maxsie
