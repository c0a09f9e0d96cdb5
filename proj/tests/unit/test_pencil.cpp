#include <doctest.h>

#include <random>

#include "maxsie/errors.hpp"
#include "maxsie/pencil.hpp"

using namespace maxsie;

TEST_CASE("the 3x3 pencil is singular for every xi")
{
  const PencilInstance p = Example3x3();
  CHECK(p.Flags().j_self_adjoint);
  CHECK_FALSE(p.Flags().j_nonnegative);
  CHECK_FALSE(p.Flags().nullspace_meets_kernel);
  for (cplx xi : {cplx(0.0), cplx(1.0), cplx(-1.0), I, -I, cplx(10.0), 10.0 * I, cplx(-3.7, 2.2)})
  {
    CHECK(PencilSigmaMin(p, xi) <= 1e-12);
    CHECK((p.Operator(xi) * Example3x3NullVector(xi)).norm() == 0.0);
  }
  std::vector<double> grid;
  for (int i = 0; i <= 40; i++) grid.push_back(-5.0 + 0.25 * i);
  CHECK_THROWS_AS(InvariantNullspaceScan(p, grid, true), HypothesisError);
  const NullspaceScan scan = InvariantNullspaceScan(p, grid, false);
  CHECK(scan.singular_everywhere);
}

TEST_CASE("M = 0, J = I: sigma_min = |1 + xi|")
{
  const PencilInstance p(CMatrix::Zero(5, 5), CMatrix::Identity(5, 5));
  for (cplx xi : {cplx(0.0), cplx(-1.0), cplx(2.0, -1.0), cplx(-0.5, 0.5)})
  {
    CHECK(std::abs(PencilSigmaMin(p, xi) - std::abs(1.0 + xi)) <= 1e-14);
  }
  CHECK(PencilInverseNorm(p, -1.0) > 1e14);
  const CoercivityMargin c = ComputeCoercivityMargin(p, 0.0, 10);
  CHECK(c.exact == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.sampled == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("flags are recomputed from the matrices")
{
  const PencilInstance coercive = RandomCoerciveInstance(16, 4);
  CHECK(coercive.Flags().j_self_adjoint);
  CHECK(coercive.Flags().JPositive());
  CHECK(coercive.NullBasis().cols() == 0);
  CHECK(coercive.NormM() <= 2.0 + 1e-12);

  const PencilInstance inv = InvariantBlockInstance(20, 5, 2);
  CHECK(inv.Flags().j_nonnegative);
  CHECK_FALSE(inv.Flags().j_injective);
  CHECK(inv.NullBasis().cols() == 5);
  CHECK(inv.Flags().nullspace_invariant);
  const CMatrix r = inv.M() * inv.NullBasis();
  CHECK((r - inv.NullBasis() * (inv.NullBasis().adjoint() * r)).norm() <= 1e-10);

  CMatrix j = CMatrix::Zero(4, 4);
  j(0, 1) = 1.0;
  const PencilInstance nonsym(CMatrix::Zero(4, 4), j);
  CHECK_FALSE(nonsym.Flags().j_self_adjoint);
  CHECK_THROWS_AS(ComputeCoercivityMargin(nonsym, 1.0, 4), HypothesisError);
  CHECK_THROWS_AS(PencilInstance(CMatrix::Zero(3, 3), CMatrix::Zero(2, 2)), PreconditionError);
}

TEST_CASE("coercivity above the threshold and the inverse bound")
{
  for (std::uint64_t seed : {1u, 2u, 3u})
  {
    const PencilInstance p = RandomCoerciveInstance(32, seed);
    const double xi0 = p.CoerciveThreshold();
    const CoercivityMargin m = ComputeCoercivityMargin(p, xi0, 200, seed);
    CHECK(m.exact >= 0.5);
    CHECK(m.sampled >= m.exact - 1e-12);
    CHECK(PencilInverseNorm(p, xi0) <= 2.0);
    CHECK(PencilInverseNorm(p, 3.0 * xi0) <= 2.0);

    // Margin is non-decreasing in xi >= 0.
    double previous = -INFINITY;
    for (double f : {0.0, 0.1, 0.3, 1.0, 3.0})
    {
      const double e = ComputeCoercivityMargin(p, f * xi0, 1, seed).exact;
      CHECK(e >= previous - 1e-12);
      previous = e;
    }
  }
}

TEST_CASE("sigma_min is Lipschitz in xi with constant ||J||")
{
  const PencilInstance p = RandomCoerciveInstance(24, 9);
  const double jn = Eigen::JacobiSVD<CMatrix>(p.J()).singularValues()(0);
  const double h = 0.05;
  double previous = PencilSigmaMin(p, -4.0);
  for (double xi = -4.0 + h; xi <= 4.0; xi += h)
  {
    const double s = PencilSigmaMin(p, xi);
    CHECK(std::abs(s - previous) <= jn * h + 1e-12);
    previous = s;
  }
}

TEST_CASE("regular pencils have isolated singular points")
{
  // Diagonal pencil with singular points exactly at xi = 1, 2, 3.
  CMatrix m = CMatrix::Zero(4, 4), j = CMatrix::Zero(4, 4);
  const double roots[] = {1.0, 2.0, 3.0};
  for (int i = 0; i < 3; i++)
  {
    m(i, i) = -1.0 - roots[i];
    j(i, i) = 1.0;
  }
  const PencilInstance p(m, j);
  std::vector<double> grid;
  for (int i = 0; i <= 160; i++) grid.push_back(-4.0 + 0.05 * i);
  const NullspaceScan scan = InvariantNullspaceScan(p, grid, false);
  CHECK_FALSE(scan.singular_everywhere);
  REQUIRE(scan.singular_xis.size() == 3);
  for (int i = 0; i < 3; i++) CHECK(scan.singular_xis[i] == doctest::Approx(roots[i]));

  const PencilInstance rnd = RandomCoerciveInstance(32, 12);
  std::vector<double> fine;
  for (int i = 0; i <= 400; i++) fine.push_back(-20.0 + 0.1 * i);
  const NullspaceScan rs = InvariantNullspaceScan(rnd, fine, false);
  CHECK(rs.singular_xis.size() < fine.size() / 10);
}

TEST_CASE("invariant null-space pencils are invertible beyond the empirical threshold")
{
  const PencilInstance p = InvariantBlockInstance(64, 8, 5);
  std::vector<double> grid;
  for (int i = 0; i <= 200; i++) grid.push_back(-10.0 + 0.5 * i);
  const NullspaceScan scan = InvariantNullspaceScan(p, grid, true);
  const double threshold = scan.xi_threshold.value_or(-INFINITY);
  for (size_t i = 0; i < grid.size(); i++)
  {
    if (grid[i] > threshold) CHECK(scan.sigma_min[i] >= kPencilSingularThreshold);
  }
  CHECK_FALSE(scan.singular_everywhere);

  const PencilInstance bad = KernelViolatingInstance(16, 3, 5);
  CHECK(bad.Flags().nullspace_meets_kernel);
  CHECK_THROWS_AS(InvariantNullspaceScan(bad, grid, true), HypothesisError);
  CHECK(InvariantNullspaceScan(bad, grid, false).singular_everywhere);
}

TEST_CASE("injective counterexample")
{
  for (cplx xi : {cplx(1.0), I, cplx(3.0)})
  {
    const CounterexampleResult r = InjectiveCounterexample(xi, 20);
    CHECK(r.residual <= r.tail_bound);
    CHECK(r.j_sigma_min == doctest::Approx(1.0 / 21.0).epsilon(1e-12));
  }
  const CounterexampleResult one = InjectiveCounterexample(1.0, 20);
  CHECK(one.residual < 1e-20);
  // |u_20| / 21 = 1 / (21 * 20!) and (I + M + J) u loses exactly the term J e_20.
  CHECK(one.tail_bound * one.u_norm == doctest::Approx(1.0 / (21.0 * std::tgamma(21.0))).epsilon(1e-12));

  const CounterexampleResult zero = InjectiveCounterexample(0.0, 8);
  CHECK(zero.residual == 0.0);
  CHECK(zero.u_norm == 1.0);

  CMatrix mm, jj, jr;
  CounterexampleMatrices(6, mm, jj, jr);
  CHECK(jr.rows() == 7);
  CHECK(jj(5, 4) == cplx(1.0 / 6.0));
  CHECK(jj.col(5).norm() == 0.0);
  CHECK(mm(0, 0) == cplx(-1.0));
  CHECK_THROWS_AS(InjectiveCounterexample(1.0, 3), PreconditionError);

  // Large |xi|^m / m! stays finite.
  const CounterexampleResult big = InjectiveCounterexample(cplx(0.0, 40.0), 120);
  CHECK(std::isfinite(big.u_norm));
  CHECK(big.residual <= big.tail_bound);
}
