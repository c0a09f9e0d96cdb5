#ifndef MAXSIE_ANALYTIC_HPP
#define MAXSIE_ANALYTIC_HPP

#include <array>
#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/medium.hpp"
#include "maxsie/ops.hpp"
#include "maxsie/solve.hpp"
#include "maxsie/types.hpp"

namespace maxsie
{

// Single layer of the unit density on the unit sphere, at distance r from the centre.
struct LayerPotential
{
  cplx value;
  bool static_limit = false;  // k == 0: min(1, 1/r)
};
LayerPotential SphereLayerPotential(cplx k, double r);
// d/dr of the same potential; at r = 1 the exterior (outside = true) or interior branch.
cplx SphereLayerPotentialDerivative(cplx k, double r, bool outside);

// eps+ sin(k-) e^{i k-} (i - 1/k-) - eps- e^{i k+} (cos k+ - sin k+ / k+).
cplx SingularResidual(double eps_plus, double eps_minus, double k_plus, double k_minus);
// Partial derivatives of SingularResidual in k+ and k-.
std::array<cplx, 2> SingularResidualGradient(double eps_plus, double eps_minus, double k_plus, double k_minus);

struct SingularPair
{
  double eps_plus = 0.0, eps_minus = 0.0;
  double k_plus = 0.0, k_minus = 0.0;
  cplx residual = 0.0;
  int iterations = 0;
};

// Damped Newton on (Re, Im) of the residual in the unknowns (k+, k-). Throws
// RootNotFoundError (with the iterate history) after max_iterations or when an iterate
// leaves the positive quadrant, PreconditionError for non-positive guesses.
SingularPair FindSingularPair(double eps_plus, double eps_minus, double guess_k_plus, double guess_k_minus,
                              int max_iterations = 100, double tolerance = 1e-12);

// Roots in [k+min, k+max] x [k-min, k-max]: cells where both Re and Im of the residual
// change sign are refined by Newton; duplicates are merged.
std::vector<SingularPair> ScanSingularPairs(double eps_plus, double eps_minus, std::array<double, 2> k_plus_range,
                                            std::array<double, 2> k_minus_range, int cells = 200);

// e x n = 0, e . n = 1, h = 0 on a unit-sphere grid.
TraceField SingularNullTrace(const SurfaceGrid &grid);

//
// Mie series for a plane wave on a homogeneous sphere centred at the origin. Fields
// follow the time convention e^{-i omega t}: curl E = i omega mu H.
//
class MieSolution
{
public:
  // Throws PreconditionError when max_degree < k+ R + 15 and AccuracyError when the last
  // retained term is not negligible.
  MieSolution(const MediumParams &medium, double radius, const PlaneWave &wave, int max_degree);

  int MaxDegree() const { return n_max_; }
  double Radius() const { return radius_; }

  // Total field at x; interior expansion for |x| < R, exterior (incident + scattered)
  // otherwise. At |x| == R the exterior side is returned.
  void TotalField(const Vec3 &x, CVec3 &e, CVec3 &h) const;
  void ScatteredField(const Vec3 &x, CVec3 &e, CVec3 &h) const;
  void InteriorField(const Vec3 &x, CVec3 &e, CVec3 &h) const;
  void IncidentField(const Vec3 &x, CVec3 &e, CVec3 &h) const;

  // Exterior total-field traces at the grid nodes.
  TraceField Traces(const SurfaceGrid &grid) const;

  const std::vector<cplx> &A() const { return a_; }
  const std::vector<cplx> &B() const { return b_; }
  const std::vector<cplx> &C() const { return c_; }
  const std::vector<cplx> &D() const { return d_; }

private:
  enum class Kind
  {
    Incident,
    Scattered,
    Interior
  };
  void Field(Kind kind, const Vec3 &x, CVec3 &e, CVec3 &h) const;

  MediumParams medium_;
  double radius_;
  PlaneWave wave_;
  int n_max_;
  std::vector<cplx> a_, b_, c_, d_;  // index n = 1..n_max, entry 0 unused
};

TraceField MieTraces(const SurfaceGrid &grid, const MediumParams &medium, const PlaneWave &wave, int max_degree);

// Spherical Bessel j_0..j_n of complex argument (downward ratio recurrence) and
// y_0..y_n of real argument (upward recurrence).
std::vector<cplx> SphericalBesselJ(int n, cplx z);
std::vector<double> SphericalBesselY(int n, double x);

}  // namespace maxsie

#endif  // MAXSIE_ANALYTIC_HPP
