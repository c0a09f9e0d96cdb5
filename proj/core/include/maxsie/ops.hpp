#ifndef MAXSIE_OPS_HPP
#define MAXSIE_OPS_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "maxsie/geom.hpp"
#include "maxsie/medium.hpp"
#include "maxsie/types.hpp"

namespace maxsie
{

// Exterior traces of the total fields at the grid nodes.
struct TraceField
{
  std::vector<CVec3> e;
  std::vector<CVec3> h;

  int Size() const { return static_cast<int>(e.size()); }
  static TraceField Zero(int n);
};

// Pointwise decompositions v x n, n x (v x n) and v . n.
std::vector<CVec3> CrossNormal(const SurfaceGrid &grid, const std::vector<CVec3> &v);
std::vector<CVec3> TangentialPart(const SurfaceGrid &grid, const std::vector<CVec3> &v);
CVector NormalPart(const SurfaceGrid &grid, const std::vector<CVec3> &v);

enum class Block
{
  ETangential,
  ENormal,
  HTangential,
  HNormal
};

//
// Unknowns are laid out block by block, [e_t | e.n | h_t | h.n], with N nodes per
// block. Tangential blocks store the two components of n x (v x n) in the local basis
// (t1, t2) of each node, interleaved node by node.
//
class BlockMap
{
public:
  explicit BlockMap(int nodes = 0) : n_(nodes) {}

  int Nodes() const { return n_; }
  int Size() const { return 6 * n_; }
  int Offset(Block b) const;
  int Width(Block b) const;
  Block Of(int dof) const;
  static std::string Label(Block b);

  // Row of output/input channel o at node i: o = 0, 1 (e_t, t1 and t2), 2 (e.n),
  // 3, 4 (h_t) and 5 (h.n).
  int Index(int o, int i) const;

private:
  int n_;
};

CVector ToDofs(const SurfaceGrid &grid, const TraceField &t);
TraceField FromDofs(const SurfaceGrid &grid, const CVector &x);

struct DenseBlockOperator
{
  CMatrix matrix;
  BlockMap blocks;
  ShapeTag shape;
  int n_polar = 0, n_azimuthal = 0;
  MediumParams medium;
};

// Weakly singular single layer (w -> int G_k w ds); k = 0 gives the Laplace S.
CMatrix AssembleSingleLayer(const SurfaceGrid &grid, cplx k);

// w -> int [grad_x G_k x n(y)] . w ds, N x 3N acting on Cartesian components stored
// node-major (column 3j + c).
CMatrix AssembleK(const SurfaceGrid &grid, cplx k);
// K+ - K- through the stable difference kernel.
CMatrix AssembleKDifference(const SurfaceGrid &grid, const WaveNumberPair &kp);
// Laplace instance of AssembleK.
CMatrix AssembleD(const SurfaceGrid &grid);

DenseBlockOperator AssembleM(const SurfaceGrid &grid, const MediumParams &medium);
DenseBlockOperator AssembleJ(const SurfaceGrid &grid, const MediumParams &medium);

// I + M + xi J without forming M and J separately.
CMatrix AssembleSystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi);
// (I + M + xi J) x by re-assembling rows on the fly; no N_dof^2 storage.
CVector ApplySystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi, const CVector &x);

// Visits the six operator rows of every target node (M scaled by m_scale plus J scaled by
// j_scale, identity excluded); rows(o, :) is DOF row BlockMap::Index(o, target).
using SystemRowSink = std::function<void(int target, const CMatrix &rows)>;
void StreamSystemRows(const SurfaceGrid &grid, const MediumParams &medium, cplx m_scale, cplx j_scale,
                      const SystemRowSink &sink);

struct ConstraintResidual
{
  CVector r1, r2;
};
ConstraintResidual ConstraintResiduals(const SurfaceGrid &grid, const MediumParams &medium,
                                       const TraceField &t);

enum class NormalField
{
  Electric,
  Magnetic
};
CMatrix AssembleReducedNormal(const SurfaceGrid &grid, const MediumParams &medium, NormalField which,
                              cplx xi);

// Flat dump: int64 N_dof, then N_dof^2 row-major (re, im) double pairs.
void WriteMatrixBinary(const std::string &path, const CMatrix &a);
CMatrix ReadMatrixBinary(const std::string &path);

}  // namespace maxsie

#endif  // MAXSIE_OPS_HPP
