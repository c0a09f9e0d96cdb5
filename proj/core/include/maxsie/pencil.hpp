#ifndef MAXSIE_PENCIL_HPP
#define MAXSIE_PENCIL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "maxsie/types.hpp"

namespace maxsie
{

// Properties of (M, J), recomputed from the matrices.
struct PencilFlags
{
  bool j_self_adjoint = false;
  bool j_nonnegative = false;  // self-adjoint with no eigenvalue below -tol
  bool j_injective = false;
  bool nullspace_invariant = false;         // M N(J) is contained in N(J)
  bool nullspace_meets_kernel = false;      // N(J) and N(I + M) share a nonzero vector
  bool JPositive() const { return j_nonnegative && j_injective; }
};

//
// Finite-dimensional pencil I + M + xi J.
//
class PencilInstance
{
public:
  PencilInstance(CMatrix m, CMatrix j);

  int Dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix &M() const { return m_; }
  const CMatrix &J() const { return j_; }
  const PencilFlags &Flags() const { return flags_; }
  // Orthonormal basis of N(J) (columns), possibly empty.
  const CMatrix &NullBasis() const { return null_basis_; }

  CMatrix Operator(cplx xi) const;
  double NormM() const;
  // Smallest eigenvalue of J; meaningful when J is self-adjoint.
  double LambdaMinJ() const { return lambda_min_j_; }
  // ||M||^2 / lambda_min(J); requires J positive definite.
  double CoerciveThreshold() const;

private:
  CMatrix m_, j_, null_basis_;
  PencilFlags flags_;
  double lambda_min_j_ = 0.0;
};

double PencilSigmaMin(const PencilInstance &p, cplx xi);
std::vector<double> PencilSigmaMinScan(const PencilInstance &p, const std::vector<cplx> &xis);
// ||(I + M + xi J)^{-1}||, infinite when singular.
double PencilInverseNorm(const PencilInstance &p, cplx xi);

struct CoercivityMargin
{
  double sampled = 0.0;  // min over random unit vectors of Re <A x, x>
  double exact = 0.0;    // smallest eigenvalue of (A + A^*) / 2
};
// Throws HypothesisError unless J is self-adjoint and positive definite.
CoercivityMargin ComputeCoercivityMargin(const PencilInstance &p, double xi, int n_samples,
                                         std::uint64_t seed = 3);

inline constexpr double kPencilSingularThreshold = 1e-8;

struct NullspaceScan
{
  std::vector<double> xis, sigma_min;
  std::vector<double> singular_xis;          // grid points with sigma_min below the threshold
  std::optional<double> xi_threshold;        // largest singular grid point, if any
  bool singular_everywhere = false;
};

// Scans sigma_min(I + M + xi J) over a real grid. In strict mode the hypotheses (J
// self-adjoint non-negative, N(J) invariant under M, N(J) and N(I + M) meeting only in 0)
// are enforced with HypothesisError; otherwise they are only reported through the flags.
NullspaceScan InvariantNullspaceScan(const PencilInstance &p, const std::vector<double> &xi_grid,
                                     bool strict = true);

// I + M = [[0,0,1],[0,0,1],[1,1,0]], J = diag(1,-1,0): singular for every xi.
PencilInstance Example3x3();
CVector Example3x3NullVector(cplx xi);

// ||M|| <= m_norm, J = A^* A + delta I.
PencilInstance RandomCoerciveInstance(int n, std::uint64_t seed, double m_norm = 2.0, double delta = 1e-3);
// J = diag(A^* A + delta I, 0) with an n_null dimensional kernel; M block upper triangular
// in that splitting with ||M22|| < 1.
PencilInstance InvariantBlockInstance(int n, int n_null, std::uint64_t seed);
// Same splitting with M = -I on N(J), so N(J) lies in N(I + M).
PencilInstance KernelViolatingInstance(int n, int n_null, std::uint64_t seed);

struct CounterexampleResult
{
  double residual = 0.0;    // ||(I + M + xi J) u|| / ||u|| on the m x m truncation
  double tail_bound = 0.0;  // |xi| |u_m| / (m + 1) / ||u||: the term the truncation drops
  double u_norm = 0.0;
  double j_sigma_min = 0.0; // of the (m+1) x m truncation of J
};

// M e_1 = -e_1, J e_k = e_{k+1} / (k + 1), u = sum (-xi)^{k-1} e_k / k!. Evaluated in
// 50-digit arithmetic. Throws PreconditionError for m < 4.
CounterexampleResult InjectiveCounterexample(cplx xi, int m);

// Truncations in double precision: M (m x m), J (m x m) and J (m+1 x m).
void CounterexampleMatrices(int m, CMatrix &mm, CMatrix &jj, CMatrix &j_rect);

}  // namespace maxsie

#endif  // MAXSIE_PENCIL_HPP
