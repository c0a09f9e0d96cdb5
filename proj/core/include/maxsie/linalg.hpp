#ifndef MAXSIE_LINALG_HPP
#define MAXSIE_LINALG_HPP

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/LU>

#include "maxsie/types.hpp"

namespace maxsie
{

// LU with partial pivoting that overwrites the matrix it is given.
using InplaceLu = Eigen::PartialPivLU<Eigen::Ref<CMatrix>>;

struct SingularValueExtremes
{
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool dense = false;  // full SVD rather than subspace iteration
  double Condition() const { return sigma_min > 0.0 ? sigma_max / sigma_min : INFINITY; }
};

// Above this many rows the extremes are estimated iteratively.
inline constexpr int kDenseSvdLimit = 2000;

// Singular values of D A D^{-1} with D = diag(sqrt(w)); w empty means D = I.
SingularValueExtremes DenseExtremes(const CMatrix &a, const RVector &w = RVector());

// Largest singular value of a linear map given by its action and adjoint action, by
// block subspace iteration with a Rayleigh-Ritz step.
using BlockOp = std::function<CMatrix(const CMatrix &)>;
double LargestSingularValue(int n, const BlockOp &apply, const BlockOp &apply_adjoint, int block = 4,
                            int iterations = 40, std::uint64_t seed = 7);
// Smallest singular value given the action of the inverse and its adjoint.
double SmallestSingularValue(int n, const BlockOp &apply, const BlockOp &solve, const BlockOp &solve_adjoint,
                             int block = 4, int iterations = 30, std::uint64_t seed = 11);

// Extremes for a square matrix, dense SVD up to kDenseSvdLimit rows, otherwise subspace
// iteration with an LU factorization. Weighting as in DenseExtremes.
SingularValueExtremes MatrixExtremes(const CMatrix &a, const RVector &w = RVector());
SingularValueExtremes MatrixExtremes(const CMatrix &a, const InplaceLu &lu,
                                     const RVector &w = RVector());

// A x from the factors alone, for when A itself has been overwritten.
CMatrix LuApply(const InplaceLu &lu, const CMatrix &x);
double WeightedLargestSingularValue(const CMatrix &a, const RVector &w = RVector());
double WeightedSmallestSingularValue(const InplaceLu &lu, const RVector &w = RVector());

// DOF weights matching the quadrature inner product: each of the six unknowns at node j
// carries the node weight w_j.
RVector DofWeights(const RVector &node_weights);

}  // namespace maxsie

#endif  // MAXSIE_LINALG_HPP
