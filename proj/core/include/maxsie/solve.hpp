#ifndef MAXSIE_SOLVE_HPP
#define MAXSIE_SOLVE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/linalg.hpp"
#include "maxsie/medium.hpp"
#include "maxsie/ops.hpp"

namespace maxsie
{

struct PlaneWave
{
  Vec3 direction = Vec3::UnitZ();
  Vec3 polarization = Vec3::UnitX();

  // Throws InputError unless both are unit vectors and mutually orthogonal.
  void Validate() const;
};

// E = p e^{i k+ d.x}, H = sqrt(eps+/mu+) (d x p) e^{i k+ d.x}.
void PlaneWaveFields(const MediumParams &medium, const PlaneWave &wave, const Vec3 &x, CVec3 &e, CVec3 &h);

struct IncidentField
{
  std::vector<CVec3> e_inc, h_inc;  // incident traces
  std::vector<CVec3> e_i, h_i;      // material-weighted right-hand sides
  CVector rhs;                      // (e_i, h_i) in DOF layout
};

IncidentField IncidentPlaneWave(const SurfaceGrid &grid, const MediumParams &medium, const Vec3 &direction,
                                const Vec3 &polarization);
IncidentField IncidentFromTraces(const SurfaceGrid &grid, const MediumParams &medium, const TraceField &inc);

struct BlockSystem
{
  CMatrix matrix;  // I + M + xi J
  BlockMap blocks;
  ShapeTag shape;
  int n_polar = 0, n_azimuthal = 0;
  MediumParams medium;
  cplx xi = 1.0;

  SurfaceGrid Grid() const { return SurfaceGrid(shape, n_polar, n_azimuthal); }
};

// Throws AssemblyError when M and J do not share grid and medium.
BlockSystem BuildSystem(const DenseBlockOperator &m, const DenseBlockOperator &j, cplx xi);
// Same system assembled in one pass.
BlockSystem AssembleBlockSystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi);

inline constexpr double kNearSingularRatio = 1e-10;

struct SolveReport
{
  TraceField trace;
  CVector dofs;
  double residual_norm = 0.0;
  std::pair<double, double> constraint_norms{0.0, 0.0};
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  double condition_estimate = 0.0;
  cplx xi_used = 0.0;
};

// Dense LU solve. Singular values are those of the system in the weighted inner product;
// throws NearSingularSystemError when sigma_min / sigma_max < kNearSingularRatio. The
// residual is recomputed from the stored matrix, the constraints from the traces.
SolveReport Solve(const BlockSystem &system, const IncidentField &rhs);

// Memory-lean variant for large grids: assembles I + M + xi J once, factors it in place
// and recomputes the residual by re-streaming the operator rows.
SolveReport SolveLean(const SurfaceGrid &grid, const MediumParams &medium, cplx xi, const IncidentField &rhs);

struct ConditionReport
{
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double condition = 0.0;
  bool dense = false;
  bool near_singular = false;
};
ConditionReport ConditionDiagnostics(const BlockSystem &system);

// Weighted L2 norm of a trace pair, and the relative distance between two.
double TraceNorm(const SurfaceGrid &grid, const TraceField &t);
double RelativeTraceError(const SurfaceGrid &grid, const TraceField &t, const TraceField &reference);

using XiRule = std::function<cplx(double omega)>;
XiRule ConstantXi(cplx xi);

struct SweepRow
{
  double omega = 0.0;
  cplx xi = 0.0;
  double sigma_min = NAN, sigma_max = NAN, cond = NAN;
  double constraint_r1 = NAN, constraint_r2 = NAN;
  std::string status;
  double j_norm = NAN;
};

// One solve per frequency with the plane wave as excitation. Failures are recorded in
// the status column and the sweep carries on.
std::vector<SweepRow> FrequencySweep(const SurfaceGrid &grid, const MediumParams &medium_template,
                                     const std::vector<double> &omegas, const XiRule &xi_rule,
                                     const PlaneWave &wave = PlaneWave());

struct FieldSample
{
  Vec3 point;
  CVec3 e, h;
  bool near_surface = false;  // closer than 0.1 diameter; accuracy not guaranteed
};

// Scattered exterior field from the exterior total traces (Stratton-Chu).
std::vector<FieldSample> EvaluateScatteredField(const SurfaceGrid &grid, const MediumParams &medium,
                                                const TraceField &trace, const std::vector<Vec3> &points);

}  // namespace maxsie

#endif  // MAXSIE_SOLVE_HPP
