#include "maxsie/linalg.hpp"

#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace maxsie
{

namespace
{

CMatrix RandomBlock(int n, int b, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix x(n, b);
  for (int j = 0; j < b; j++)
  {
    for (int i = 0; i < n; i++)
    {
      x(i, j) = cplx(g(rng), g(rng));
    }
  }
  return x;
}

CMatrix Orthonormalize(const CMatrix &x)
{
  Eigen::HouseholderQR<CMatrix> qr(x);
  return qr.householderQ() * CMatrix::Identity(x.rows(), x.cols());
}

}  // namespace

RVector DofWeights(const RVector &node_weights)
{
  const Eigen::Index n = node_weights.size();
  RVector w(6 * n);
  for (Eigen::Index j = 0; j < n; j++)
  {
    w[2 * j] = w[2 * j + 1] = node_weights[j];
    w[2 * n + j] = node_weights[j];
    w[3 * n + 2 * j] = w[3 * n + 2 * j + 1] = node_weights[j];
    w[5 * n + j] = node_weights[j];
  }
  return w;
}

SingularValueExtremes DenseExtremes(const CMatrix &a, const RVector &w)
{
  SingularValueExtremes r;
  r.dense = true;
  if (a.size() == 0)
  {
    return r;
  }
  RVector s;
  if (w.size() == 0)
  {
    s = Eigen::BDCSVD<CMatrix>(a).singularValues();
  }
  else
  {
    const RVector d = w.cwiseSqrt();
    const CMatrix b = d.cast<cplx>().asDiagonal() * a * d.cwiseInverse().cast<cplx>().asDiagonal();
    s = Eigen::BDCSVD<CMatrix>(b).singularValues();
  }
  r.sigma_max = s.maxCoeff();
  r.sigma_min = s.minCoeff();
  return r;
}

double LargestSingularValue(int n, const BlockOp &apply, const BlockOp &apply_adjoint, int block, int iterations,
                            std::uint64_t seed)
{
  block = std::min(block, n);
  CMatrix x = Orthonormalize(RandomBlock(n, block, seed));
  double est = 0.0;
  for (int it = 0; it < iterations; it++)
  {
    const CMatrix ax = apply(x);
    const double s = Eigen::JacobiSVD<CMatrix>(ax).singularValues()(0);
    if (it > 3 && std::abs(s - est) <= 1e-12 * s)
    {
      return s;
    }
    est = s;
    x = Orthonormalize(apply_adjoint(ax));
  }
  return est;
}

double SmallestSingularValue(int n, const BlockOp &apply, const BlockOp &solve, const BlockOp &solve_adjoint,
                             int block, int iterations, std::uint64_t seed)
{
  block = std::min(block, n);
  CMatrix x = Orthonormalize(RandomBlock(n, block, seed));
  double est = INFINITY;
  for (int it = 0; it < iterations; it++)
  {
    x = Orthonormalize(solve(solve_adjoint(x)));
    // Ritz value from the forward action, which is accurate even when A is nearly
    // singular and the inverse iterates are huge.
    const RVector s = Eigen::JacobiSVD<CMatrix>(apply(x)).singularValues();
    const double v = s(s.size() - 1);
    if (it > 2 && std::abs(v - est) <= 1e-10 * v)
    {
      return v;
    }
    est = v;
  }
  return est;
}

SingularValueExtremes MatrixExtremes(const CMatrix &a, const RVector &w)
{
  if (a.rows() <= kDenseSvdLimit)
  {
    return DenseExtremes(a, w);
  }
  CMatrix f = a;
  const InplaceLu lu(f);
  return MatrixExtremes(a, lu, w);
}

namespace
{

// A = P^{-1} L U, so A^* y = b gives P y = L^{-*} U^{-*} b.
CMatrix LuSolveAdjoint(const InplaceLu &lu, const CMatrix &b)
{
  CMatrix z = lu.matrixLU().triangularView<Eigen::Upper>().adjoint().solve(b);
  lu.matrixLU().triangularView<Eigen::UnitLower>().adjoint().solveInPlace(z);
  return lu.permutationP().transpose() * z;
}

}  // namespace

CMatrix LuApply(const InplaceLu &lu, const CMatrix &x)
{
  CMatrix y = lu.matrixLU().triangularView<Eigen::Upper>() * x;
  y = lu.matrixLU().triangularView<Eigen::UnitLower>() * y;
  return lu.permutationP().transpose() * y;
}

double WeightedLargestSingularValue(const CMatrix &a, const RVector &w)
{
  const int n = static_cast<int>(a.rows());
  const RVector d = w.size() ? RVector(w.cwiseSqrt()) : RVector::Ones(n);
  const RVector di = d.cwiseInverse();
  const BlockOp apply = [&](const CMatrix &x) -> CMatrix {
    return d.cast<cplx>().asDiagonal() * (a * (di.cast<cplx>().asDiagonal() * x));
  };
  const BlockOp apply_adj = [&](const CMatrix &x) -> CMatrix {
    return di.cast<cplx>().asDiagonal() * (a.adjoint() * (d.cast<cplx>().asDiagonal() * x));
  };
  return LargestSingularValue(n, apply, apply_adj);
}

double WeightedSmallestSingularValue(const InplaceLu &lu, const RVector &w)
{
  const int n = static_cast<int>(lu.matrixLU().rows());
  const RVector d = w.size() ? RVector(w.cwiseSqrt()) : RVector::Ones(n);
  const RVector di = d.cwiseInverse();
  const auto dc = d.cast<cplx>().asDiagonal();
  const auto dic = di.cast<cplx>().asDiagonal();
  const BlockOp apply = [&](const CMatrix &x) -> CMatrix { return dc * LuApply(lu, dic * x); };
  const BlockOp solve = [&](const CMatrix &x) -> CMatrix { return dc * lu.solve(dic * x); };
  const BlockOp solve_adj = [&](const CMatrix &x) -> CMatrix { return dic * LuSolveAdjoint(lu, dc * x); };
  return SmallestSingularValue(n, apply, solve, solve_adj);
}

SingularValueExtremes MatrixExtremes(const CMatrix &a, const InplaceLu &lu, const RVector &w)
{
  SingularValueExtremes r;
  r.sigma_max = WeightedLargestSingularValue(a, w);
  r.sigma_min = WeightedSmallestSingularValue(lu, w);
  return r;
}

}  // namespace maxsie
