#include "maxsie/pencil.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "maxsie/errors.hpp"

namespace maxsie
{

namespace
{

double SpectralNorm(const CMatrix &a)
{
  if (a.size() == 0)
  {
    return 0.0;
  }
  return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
}

double SmallestSingular(const CMatrix &a)
{
  const RVector s = Eigen::JacobiSVD<CMatrix>(a).singularValues();
  return s.size() ? s(s.size() - 1) : 0.0;
}

CMatrix RandomGaussian(int rows, int cols, std::mt19937_64 &rng)
{
  std::normal_distribution<double> nd;
  CMatrix a(rows, cols);
  for (int j = 0; j < cols; j++)
  {
    for (int i = 0; i < rows; i++)
    {
      const double re = nd(rng), im = nd(rng);
      a(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return a;
}

CMatrix ScaledTo(const CMatrix &a, double norm)
{
  return a * (norm / SpectralNorm(a));
}

}  // namespace

PencilInstance::PencilInstance(CMatrix m, CMatrix j) : m_(std::move(m)), j_(std::move(j))
{
  const int n = static_cast<int>(m_.rows());
  if (m_.cols() != n || j_.rows() != n || j_.cols() != n)
  {
    throw PreconditionError("pencil matrices must be square and of equal size");
  }
  const double jn = std::max(1.0, SpectralNorm(j_));
  const double tol = 1e-10 * jn;
  flags_.j_self_adjoint = (j_ - j_.adjoint()).norm() <= 1e-12 * jn;
  if (flags_.j_self_adjoint)
  {
    const CMatrix h = 0.5 * (j_ + j_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const RVector &lam = es.eigenvalues();
    lambda_min_j_ = lam(0);
    flags_.j_nonnegative = lam(0) >= -1e-12 * jn;
    // Null eigenvalues need not be the smallest when J is indefinite.
    std::vector<int> idx;
    for (int i = 0; i < n; i++)
    {
      if (std::abs(lam(i)) <= tol)
      {
        idx.push_back(i);
      }
    }
    null_basis_.resize(n, static_cast<int>(idx.size()));
    for (size_t c = 0; c < idx.size(); c++)
    {
      null_basis_.col(c) = es.eigenvectors().col(idx[c]);
    }
  }
  else
  {
    Eigen::JacobiSVD<CMatrix> svd(j_, Eigen::ComputeFullV);
    const RVector &s = svd.singularValues();
    int rank = 0;
    while (rank < n && s(rank) > tol)
    {
      rank++;
    }
    null_basis_ = svd.matrixV().rightCols(n - rank);
  }
  flags_.j_injective = null_basis_.cols() == 0;
  if (flags_.j_injective)
  {
    flags_.nullspace_invariant = true;
    flags_.nullspace_meets_kernel = false;
  }
  else
  {
    const CMatrix r = m_ * null_basis_;
    const CMatrix off = r - null_basis_ * (null_basis_.adjoint() * r);
    flags_.nullspace_invariant = off.norm() <= 1e-10 * std::max(1.0, SpectralNorm(m_));
    const CMatrix k = r + null_basis_;
    flags_.nullspace_meets_kernel = SmallestSingular(k) <= 1e-10;
  }
}

CMatrix PencilInstance::Operator(cplx xi) const
{
  return CMatrix::Identity(Dim(), Dim()) + m_ + xi * j_;
}

double PencilInstance::NormM() const
{
  return SpectralNorm(m_);
}

double PencilInstance::CoerciveThreshold() const
{
  if (!flags_.j_self_adjoint || !flags_.JPositive())
  {
    throw HypothesisError("coercive threshold needs J self-adjoint positive definite");
  }
  const double nm = NormM();
  return nm * nm / lambda_min_j_;
}

double PencilSigmaMin(const PencilInstance &p, cplx xi)
{
  return SmallestSingular(p.Operator(xi));
}

std::vector<double> PencilSigmaMinScan(const PencilInstance &p, const std::vector<cplx> &xis)
{
  std::vector<double> s;
  s.reserve(xis.size());
  for (const cplx &xi : xis)
  {
    s.push_back(PencilSigmaMin(p, xi));
  }
  return s;
}

double PencilInverseNorm(const PencilInstance &p, cplx xi)
{
  const double s = PencilSigmaMin(p, xi);
  return s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
}

CoercivityMargin ComputeCoercivityMargin(const PencilInstance &p, double xi, int n_samples, std::uint64_t seed)
{
  if (!p.Flags().j_self_adjoint || !p.Flags().JPositive())
  {
    throw HypothesisError("coercivity needs J self-adjoint, positive and injective");
  }
  const CMatrix a = p.Operator(xi);
  CoercivityMargin out;
  const CMatrix h = 0.5 * (a + a.adjoint());
  out.exact = Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
  std::mt19937_64 rng(seed);
  out.sampled = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; s++)
  {
    CVector x = RandomGaussian(p.Dim(), 1, rng).col(0);
    x.normalize();
    out.sampled = std::min(out.sampled, x.dot(a * x).real());
  }
  return out;
}

NullspaceScan InvariantNullspaceScan(const PencilInstance &p, const std::vector<double> &xi_grid, bool strict)
{
  const PencilFlags &f = p.Flags();
  if (strict)
  {
    if (!f.j_self_adjoint || !f.j_nonnegative)
    {
      throw HypothesisError("J must be self-adjoint and non-negative");
    }
    if (!f.nullspace_invariant)
    {
      throw HypothesisError("N(J) is not invariant under M");
    }
    if (f.nullspace_meets_kernel)
    {
      throw HypothesisError("N(J) and N(I + M) intersect nontrivially");
    }
  }
  NullspaceScan scan;
  scan.xis = xi_grid;
  for (double xi : xi_grid)
  {
    const double s = PencilSigmaMin(p, xi);
    scan.sigma_min.push_back(s);
    if (s < kPencilSingularThreshold)
    {
      scan.singular_xis.push_back(xi);
      scan.xi_threshold = std::max(scan.xi_threshold.value_or(xi), xi);
    }
  }
  scan.singular_everywhere = !xi_grid.empty() && scan.singular_xis.size() == xi_grid.size();
  return scan;
}

PencilInstance Example3x3()
{
  CMatrix ipm(3, 3);
  ipm << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  CMatrix j = CMatrix::Zero(3, 3);
  j(0, 0) = 1.0;
  j(1, 1) = -1.0;
  return PencilInstance(ipm - CMatrix::Identity(3, 3), j);
}

CVector Example3x3NullVector(cplx xi)
{
  CVector v(3);
  v << 1.0, -1.0, -xi;
  return v;
}

PencilInstance RandomCoerciveInstance(int n, std::uint64_t seed, double m_norm, double delta)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(0.5, 1.0);
  const CMatrix m = ScaledTo(RandomGaussian(n, n, rng), m_norm * scale(rng));
  const CMatrix a = RandomGaussian(n, n, rng) / std::sqrt(double(n));
  CMatrix j = a.adjoint() * a + delta * CMatrix::Identity(n, n);
  j = 0.5 * (j + j.adjoint()).eval();
  return PencilInstance(m, j);
}

namespace
{

void BlockParts(int n, int n_null, std::mt19937_64 &rng, CMatrix &m, CMatrix &j)
{
  if (n_null < 1 || n_null >= n)
  {
    throw PreconditionError("null block size must lie in [1, n)");
  }
  const int r = n - n_null;
  const CMatrix a = RandomGaussian(r, r, rng) / std::sqrt(double(r));
  j = CMatrix::Zero(n, n);
  j.topLeftCorner(r, r) = a.adjoint() * a + 1e-3 * CMatrix::Identity(r, r);
  j = 0.5 * (j + j.adjoint()).eval();
  m = ScaledTo(RandomGaussian(n, n, rng), 2.0);
  m.topRightCorner(r, n_null).setZero();
}

}  // namespace

PencilInstance InvariantBlockInstance(int n, int n_null, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  CMatrix m, j;
  BlockParts(n, n_null, rng, m, j);
  m.bottomRightCorner(n_null, n_null) = ScaledTo(RandomGaussian(n_null, n_null, rng), 0.5);
  return PencilInstance(m, j);
}

PencilInstance KernelViolatingInstance(int n, int n_null, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  CMatrix m, j;
  BlockParts(n, n_null, rng, m, j);
  m.bottomRightCorner(n_null, n_null) = -CMatrix::Identity(n_null, n_null);
  return PencilInstance(m, j);
}

void CounterexampleMatrices(int m, CMatrix &mm, CMatrix &jj, CMatrix &j_rect)
{
  mm = CMatrix::Zero(m, m);
  mm(0, 0) = -1.0;
  j_rect = CMatrix::Zero(m + 1, m);
  for (int k = 1; k <= m; k++)
  {
    j_rect(k, k - 1) = 1.0 / (k + 1.0);
  }
  jj = j_rect.topRows(m);
}

CounterexampleResult InjectiveCounterexample(cplx xi, int m)
{
  using boost::multiprecision::cpp_bin_float_50;
  using Real = cpp_bin_float_50;
  if (m < 4)
  {
    throw PreconditionError("counterexample truncation needs m >= 4");
  }
  struct C
  {
    Real re, im;
  };
  auto mul = [](const C &a, const C &b) { return C{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; };
  const C x{Real(xi.real()), Real(xi.imag())};
  const C mx{-x.re, -x.im};

  // u_1 = 1, u_{k+1} = u_k (-xi) / (k + 1); kept unscaled, the 50-digit exponent range is ample.
  std::vector<C> u(m);
  u[0] = {Real(1), Real(0)};
  for (int k = 1; k < m; k++)
  {
    const C t = mul(u[k - 1], mx);
    u[k] = {t.re / (k + 1), t.im / (k + 1)};
  }
  // r = (I + M) u + xi J u with the truncated J (J e_m dropped).
  Real r2 = 0, u2 = 0;
  for (int k = 0; k < m; k++)
  {
    u2 += u[k].re * u[k].re + u[k].im * u[k].im;
    C r = k == 0 ? C{Real(0), Real(0)} : u[k];
    if (k >= 1)
    {
      const C t = mul(x, u[k - 1]);
      r.re += t.re / (k + 1);
      r.im += t.im / (k + 1);
    }
    r2 += r.re * r.re + r.im * r.im;
  }
  const Real un = sqrt(u2);
  const Real um = sqrt(u[m - 1].re * u[m - 1].re + u[m - 1].im * u[m - 1].im);
  CounterexampleResult out;
  out.u_norm = static_cast<double>(un);
  out.residual = static_cast<double>(sqrt(r2) / un);
  out.tail_bound = static_cast<double>(Real(std::abs(xi)) * um / (m + 1) / un);
  CMatrix mm, jj, jr;
  CounterexampleMatrices(m, mm, jj, jr);
  out.j_sigma_min = SmallestSingular(jr);
  return out;
}

}  // namespace maxsie
