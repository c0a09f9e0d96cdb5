#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "maxsie/analytic.hpp"
#include "maxsie/errors.hpp"
#include "maxsie/solve.hpp"

using namespace maxsie;

namespace
{

const MediumParams kDielectric{1.0, 2.0, 1.0, 1.0, 1.0};

MediumParams SingularMedium()
{
  const SingularPair p = FindSingularPair(1.0, 6.0, 0.8, 1.8);
  return MediumParams::FromWaveNumbers(p.eps_plus, p.eps_minus, p.k_plus, p.k_minus);
}

TraceField IncidentTrace(const IncidentField &inc)
{
  return TraceField{inc.e_inc, inc.h_inc};
}

}  // namespace

TEST_CASE("plane wave satisfies Faraday's law and the impedance relation")
{
  const MediumParams medium{1.3, 2.0, 0.8, 1.0, 1.7};
  const PlaneWave wave{Vec3(0.0, 0.6, 0.8), Vec3(1.0, 0.0, 0.0)};
  const double h = 1e-5;
  for (const Vec3 &x : {Vec3(1.5, -0.2, 0.3), Vec3(-2.0, 1.0, 0.5)})
  {
    CVec3 curl = CVec3::Zero();
    for (int c = 0; c < 3; c++)
    {
      CVec3 ep, em, hh;
      PlaneWaveFields(medium, wave, x + h * Vec3::Unit(c), ep, hh);
      PlaneWaveFields(medium, wave, x - h * Vec3::Unit(c), em, hh);
      const CVec3 d = (ep - em) / (2.0 * h);
      // curl_i = eps_ijk d_j E_k with d_j = d/dx_c
      curl[(c + 2) % 3] += d[(c + 1) % 3];
      curl[(c + 1) % 3] -= d[(c + 2) % 3];
    }
    CVec3 e, hf;
    PlaneWaveFields(medium, wave, x, e, hf);
    CHECK((curl - I * medium.omega * medium.mu_plus * hf).norm() <= 1e-6);
  }
  const SurfaceGrid g = BuildSphereGrid(1.0, 6, 12);
  const IncidentField inc = IncidentPlaneWave(g, medium, wave.direction, wave.polarization);
  for (int i = 0; i < g.Size(); i++)
  {
    CHECK(std::abs(inc.h_inc[i].norm() / inc.e_inc[i].norm() - std::sqrt(medium.eps_plus / medium.mu_plus)) <= 1e-14);
  }
}

TEST_CASE("right-hand side weights and the low-frequency limit")
{
  const MediumParams medium{1.0, cplx(3.0, 0.5), 1.0, 2.0, 1e-9};
  const SurfaceGrid g = BuildEllipsoidGrid(Vec3(1.0, 0.9, 1.2), 6, 12);
  const PlaneWave wave;
  const IncidentField inc = IncidentPlaneWave(g, medium, wave.direction, wave.polarization);
  const cplx ce_t = 2.0 * medium.eps_plus / (medium.eps_plus + medium.eps_minus);
  const cplx ce_n = 2.0 * medium.eps_minus / (medium.eps_plus + medium.eps_minus);
  const CVec3 p = wave.polarization.cast<cplx>();
  for (int i = 0; i < g.Size(); i++)
  {
    const CVec3 n = g.Normals()[i].cast<cplx>();
    const CVec3 e = inc.e_inc[i];
    const CVec3 expect = ce_t * Cross(n, Cross(e, n)) + ce_n * n * Dot(e, n);
    CHECK((inc.e_i[i] - expect).norm() <= 1e-13);
    const CVec3 limit = ce_t * Cross(n, Cross(p, n)) + ce_n * n * Dot(p, n);
    CHECK((inc.e_i[i] - limit).norm() <= 1e-8);
  }
  CHECK_THROWS_AS(IncidentPlaneWave(g, medium, Vec3::UnitZ(), Vec3(1.0, 0.0, 0.1).normalized()), InputError);
  CHECK_THROWS_AS(IncidentPlaneWave(g, medium, Vec3(0.0, 0.0, 2.0), Vec3::UnitX()), InputError);
}

TEST_CASE("system construction is linear in xi")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 5, 10);
  const DenseBlockOperator m = AssembleM(g, kDielectric), j = AssembleJ(g, kDielectric);
  const BlockSystem s0 = BuildSystem(m, j, 0.0);
  CHECK(s0.matrix == CMatrix(CMatrix::Identity(m.matrix.rows(), m.matrix.cols()) + m.matrix));
  const cplx x1(2.0, 1.0), x2(-0.5, 0.0);
  const CMatrix d = BuildSystem(m, j, x1).matrix - BuildSystem(m, j, x2).matrix;
  CHECK((d - (x1 - x2) * j.matrix).cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + j.matrix.cwiseAbs().maxCoeff()));

  const DenseBlockOperator other = AssembleJ(g, kDielectric.WithOmega(0.5));
  CHECK_THROWS_AS(BuildSystem(m, other, 1.0), AssemblyError);
  const DenseBlockOperator coarse = AssembleJ(BuildSphereGrid(1.0, 4, 10), kDielectric);
  CHECK_THROWS_AS(BuildSystem(m, coarse, 1.0), AssemblyError);
}

TEST_CASE("identical media: the solution is the incident trace and the system is I + xi J")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 12, 24);
  const MediumParams same{1.5, 1.5, 1.0, 1.0, 0.8};
  const IncidentField inc = IncidentPlaneWave(g, same, Vec3::UnitZ(), Vec3::UnitX());
  for (cplx xi : {cplx(0.0), cplx(1.0), cplx(3.0, 1.0)})
  {
    const BlockSystem s = AssembleBlockSystem(g, same, xi);
    const CMatrix expect = CMatrix::Identity(s.matrix.rows(), s.matrix.cols()) + xi * AssembleJ(g, same).matrix;
    CHECK((s.matrix - expect).cwiseAbs().maxCoeff() <= 1e-13);
    const SolveReport rep = Solve(s, inc);
    CHECK(RelativeTraceError(g, rep.trace, IncidentTrace(inc)) <= 1e-10);
  }
  const ConditionReport c = ConditionDiagnostics(AssembleBlockSystem(g, same, 0.0));
  CHECK(std::abs(c.condition - 1.0) <= 1e-12);
}

TEST_CASE("condition diagnostics of the identity")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 4, 8);
  BlockSystem s;
  s.matrix = CMatrix::Identity(6 * g.Size(), 6 * g.Size());
  s.blocks = BlockMap(g.Size());
  s.shape = g.Shape();
  s.n_polar = g.NPolar();
  s.n_azimuthal = g.NAzimuthal();
  const ConditionReport c = ConditionDiagnostics(s);
  CHECK(std::abs(c.condition - 1.0) <= 1e-12);
  CHECK(c.dense);
  CHECK_FALSE(c.near_singular);
}

TEST_CASE("dielectric sphere: solver against the Mie series")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 12, 24);
  const PlaneWave wave;
  const IncidentField inc = IncidentPlaneWave(g, kDielectric, wave.direction, wave.polarization);
  const BlockSystem s = AssembleBlockSystem(g, kDielectric, 1.0);
  const SolveReport rep = Solve(s, inc);
  const TraceField mie = MieTraces(g, kDielectric, wave, 30);
  CHECK(RelativeTraceError(g, rep.trace, mie) <= 1e-4);
  CHECK(rep.residual_norm <= 1e-12);
  CHECK(rep.constraint_norms.first <= 1e-6);
  CHECK(rep.constraint_norms.second <= 1e-6);
  CHECK(rep.xi_used == cplx(1.0));

  // Independent recomputation of the reported residual.
  const CVector r = s.matrix * rep.dofs - inc.rhs;
  const RVector w = DofWeights(Eigen::Map<const RVector>(g.Weights().data(), g.Size()));
  const double rel = std::sqrt((r.cwiseAbs2().array() * w.array()).sum() /
                               (inc.rhs.cwiseAbs2().array() * w.array()).sum());
  CHECK(std::abs(rel - rep.residual_norm) <= 1e-15 + 1e-6 * rel);

  SUBCASE("scattered field at twice the radius")
  {
    MieSolution oracle(kDielectric, 1.0, wave, 30);
    std::vector<Vec3> pts{Vec3(2.0, 0.0, 0.0), Vec3(0.0, 0.0, -2.0), Vec3(1.2, -1.2, 0.8).normalized() * 2.0};
    const auto samples = EvaluateScatteredField(g, kDielectric, rep.trace, pts);
    for (const FieldSample &smp : samples)
    {
      CVec3 e, h;
      oracle.ScatteredField(smp.point, e, h);
      CHECK((smp.e - e).norm() <= 1e-4 * e.norm());
      CHECK((smp.h - h).norm() <= 1e-4 * h.norm());
      CHECK_FALSE(smp.near_surface);
    }
  }

  SUBCASE("far field approaches the Silver-Muller condition")
  {
    double previous = INFINITY;
    const Vec3 dir = Vec3(0.3, 0.4, 0.866).normalized();
    for (double r : {10.0, 30.0, 100.0})
    {
      const FieldSample smp = EvaluateScatteredField(g, kDielectric, rep.trace, {r * dir})[0];
      const CVec3 xh = dir.cast<cplx>();
      const double sm = (std::sqrt(kDielectric.mu_plus) * Cross(smp.h, xh) - std::sqrt(kDielectric.eps_plus) * smp.e).norm() /
                        smp.e.norm();
      CHECK(sm < previous);
      previous = sm;
    }
    CHECK(previous <= 0.05);
  }
}

TEST_CASE("linearity and xi-robustness of solved traces")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 12, 24);
  const MediumParams medium{1.0, cplx(2.5, 0.2), 1.0, 1.2, 0.8};
  const IncidentField a = IncidentPlaneWave(g, medium, Vec3::UnitZ(), Vec3::UnitX());
  const IncidentField b = IncidentPlaneWave(g, medium, Vec3(1.0, 0.0, 0.0), Vec3(0.0, 0.6, 0.8));
  const BlockSystem s = AssembleBlockSystem(g, medium, 1.0);
  const cplx alpha(0.3, -1.1), beta(2.0, 0.5);
  IncidentField comb = a;
  comb.rhs = alpha * a.rhs + beta * b.rhs;
  const CVector xa = Solve(s, a).dofs, xb = Solve(s, b).dofs, xc = Solve(s, comb).dofs;
  CHECK((xc - alpha * xa - beta * xb).norm() <= 1e-12 * xc.norm());

  std::vector<CVector> sols;
  for (double xi : {0.5, 1.0, 2.0, 4.0})
  {
    const SolveReport rep = Solve(AssembleBlockSystem(g, medium, xi), a);
    CHECK(rep.constraint_norms.first <= 1e-6);
    CHECK(rep.constraint_norms.second <= 1e-6);
    sols.push_back(rep.dofs);
  }
  for (const CVector &x : sols) CHECK((x - sols[0]).norm() <= 1e-8 * sols[0].norm());
}

TEST_CASE("lean and dense solves agree")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 6, 12);
  const IncidentField inc = IncidentPlaneWave(g, kDielectric, Vec3::UnitZ(), Vec3::UnitY());
  const SolveReport d = Solve(AssembleBlockSystem(g, kDielectric, 1.0), inc);
  const SolveReport l = SolveLean(g, kDielectric, 1.0, inc);
  CHECK((d.dofs - l.dofs).norm() <= 1e-12 * d.dofs.norm());
  CHECK(std::abs(d.smallest_singular_value - l.smallest_singular_value) <= 1e-8 * d.smallest_singular_value);
  CHECK(l.residual_norm <= 1e-12);
}

TEST_CASE("singular sphere parameters: unstabilized solve fails, stabilized succeeds")
{
  const MediumParams medium = SingularMedium();
  const SurfaceGrid g = BuildSphereGrid(1.0, 12, 24);
  const IncidentField inc = IncidentPlaneWave(g, medium, Vec3::UnitZ(), Vec3::UnitX());
  bool failed = false;
  try
  {
    const SolveReport rep = Solve(AssembleBlockSystem(g, medium, 0.0), inc);
    CHECK(rep.smallest_singular_value <= 1e-4);
  }
  catch (const NearSingularSystemError &e)
  {
    failed = true;
    CHECK(e.SigmaMin() <= 1e-4);
  }
  MESSAGE("unstabilized solve raised near-singular error: " << failed);
  const SolveReport rep = Solve(AssembleBlockSystem(g, medium, 1.0), inc);
  CHECK(rep.smallest_singular_value >= 1e-2);
  CHECK(rep.constraint_norms.first <= 1e-6);
  CHECK(rep.constraint_norms.second <= 1e-6);
}

TEST_CASE("frequency sweep: low-frequency behaviour and per-point failures")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 6, 12);
  const std::vector<double> omegas{1e-2, 1e-4, 1e-6};
  const auto one = FrequencySweep(g, kDielectric, omegas, ConstantXi(1.0));
  const auto zero = FrequencySweep(g, kDielectric, omegas, ConstantXi(0.0));
  REQUIRE(one.size() == omegas.size());
  for (size_t i = 0; i < one.size(); i++)
  {
    CHECK(one[i].status == "ok");
    CHECK(one[i].constraint_r1 <= 1e-6);
    CHECK(one[i].constraint_r2 <= 1e-6);
  }
  CHECK(std::abs(one[2].cond - zero[2].cond) <= 1e-8 * zero[2].cond);
  CHECK(std::abs(one[2].sigma_min - zero[2].sigma_min) <= 1e-8 * zero[2].sigma_min);
  CHECK(one[0].j_norm / one[1].j_norm == doctest::Approx(100.0).epsilon(0.05));

  // The singular pair is tied to one frequency; the row there must be flagged.
  const MediumParams sing = SingularMedium();
  const auto rows = FrequencySweep(BuildSphereGrid(1.0, 12, 24), sing, {sing.omega, 0.5 * sing.omega}, ConstantXi(0.0));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status == "near_singular");
  CHECK(rows[1].status == "ok");

  CHECK_THROWS_AS(FrequencySweep(g, kDielectric, {}, ConstantXi(1.0)), ConfigError);
  CHECK_THROWS_AS(FrequencySweep(g, kDielectric, {1.0, -1.0}, ConstantXi(1.0)), ConfigError);
}

TEST_CASE("scattered field vanishes for identical media and flags near-surface points")
{
  const SurfaceGrid g = BuildSphereGrid(1.0, 12, 24);
  const MediumParams same{1.0, 1.0, 1.0, 1.0, 1.2};
  const IncidentField inc = IncidentPlaneWave(g, same, Vec3::UnitZ(), Vec3::UnitX());
  const SolveReport rep = Solve(AssembleBlockSystem(g, same, 1.0), inc);
  const auto s = EvaluateScatteredField(g, same, rep.trace, {Vec3(0.0, 0.0, 2.0), Vec3(3.0, 1.0, 0.0), Vec3(1.05, 0.0, 0.0)});
  CHECK(s[0].e.norm() <= 1e-8);
  CHECK(s[0].h.norm() <= 1e-8);
  CHECK(s[1].e.norm() <= 1e-8);
  CHECK(s[2].near_surface);
  CHECK_FALSE(s[0].near_surface);
}
