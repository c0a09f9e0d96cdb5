#include "maxsie/ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "maxsie/errors.hpp"
#include "maxsie/kernels.hpp"
#include "maxsie/nystrom.hpp"
#include "maxsie/spherical_harmonics.hpp"

namespace maxsie
{

TraceField TraceField::Zero(int n)
{
  return {std::vector<CVec3>(n, CVec3::Zero()), std::vector<CVec3>(n, CVec3::Zero())};
}

std::vector<CVec3> CrossNormal(const SurfaceGrid &grid, const std::vector<CVec3> &v)
{
  std::vector<CVec3> out(v.size());
  for (size_t i = 0; i < v.size(); i++)
  {
    out[i] = Cross(v[i], grid.Normals()[i].cast<cplx>());
  }
  return out;
}

std::vector<CVec3> TangentialPart(const SurfaceGrid &grid, const std::vector<CVec3> &v)
{
  std::vector<CVec3> out(v.size());
  for (size_t i = 0; i < v.size(); i++)
  {
    const CVec3 n = grid.Normals()[i].cast<cplx>();
    out[i] = Cross(n, Cross(v[i], n));
  }
  return out;
}

CVector NormalPart(const SurfaceGrid &grid, const std::vector<CVec3> &v)
{
  CVector out(v.size());
  for (size_t i = 0; i < v.size(); i++)
  {
    out[i] = v[i].transpose() * grid.Normals()[i].cast<cplx>();
  }
  return out;
}

int BlockMap::Offset(Block b) const
{
  switch (b)
  {
    case Block::ETangential: return 0;
    case Block::ENormal: return 2 * n_;
    case Block::HTangential: return 3 * n_;
    case Block::HNormal: return 5 * n_;
  }
  return 0;
}

int BlockMap::Width(Block b) const
{
  return (b == Block::ETangential || b == Block::HTangential) ? 2 * n_ : n_;
}

Block BlockMap::Of(int dof) const
{
  if (dof < 0 || dof >= Size())
  {
    throw PreconditionError("DOF index out of range");
  }
  if (dof < 2 * n_) return Block::ETangential;
  if (dof < 3 * n_) return Block::ENormal;
  if (dof < 5 * n_) return Block::HTangential;
  return Block::HNormal;
}

std::string BlockMap::Label(Block b)
{
  switch (b)
  {
    case Block::ETangential: return "e_tangential";
    case Block::ENormal: return "e_normal";
    case Block::HTangential: return "h_tangential";
    case Block::HNormal: return "h_normal";
  }
  return "";
}

int BlockMap::Index(int o, int i) const
{
  switch (o)
  {
    case 0: return 2 * i;
    case 1: return 2 * i + 1;
    case 2: return 2 * n_ + i;
    case 3: return 3 * n_ + 2 * i;
    case 4: return 3 * n_ + 2 * i + 1;
    default: return 5 * n_ + i;
  }
}

CVector ToDofs(const SurfaceGrid &grid, const TraceField &t)
{
  const int n = grid.Size();
  if (t.Size() != n || static_cast<int>(t.h.size()) != n)
  {
    throw PreconditionError("trace size does not match the grid");
  }
  const BlockMap map(n);
  CVector x(map.Size());
  for (int i = 0; i < n; i++)
  {
    const Vec3 &t1 = grid.Tangent1()[i], &t2 = grid.Tangent2()[i], &nn = grid.Normals()[i];
    x[map.Index(0, i)] = t.e[i].transpose() * t1.cast<cplx>();
    x[map.Index(1, i)] = t.e[i].transpose() * t2.cast<cplx>();
    x[map.Index(2, i)] = t.e[i].transpose() * nn.cast<cplx>();
    x[map.Index(3, i)] = t.h[i].transpose() * t1.cast<cplx>();
    x[map.Index(4, i)] = t.h[i].transpose() * t2.cast<cplx>();
    x[map.Index(5, i)] = t.h[i].transpose() * nn.cast<cplx>();
  }
  return x;
}

TraceField FromDofs(const SurfaceGrid &grid, const CVector &x)
{
  const int n = grid.Size();
  const BlockMap map(n);
  if (x.size() != map.Size())
  {
    throw PreconditionError("DOF vector size does not match the grid");
  }
  TraceField t = TraceField::Zero(n);
  for (int i = 0; i < n; i++)
  {
    const CVec3 t1 = grid.Tangent1()[i].cast<cplx>(), t2 = grid.Tangent2()[i].cast<cplx>();
    const CVec3 nn = grid.Normals()[i].cast<cplx>();
    t.e[i] = x[map.Index(0, i)] * t1 + x[map.Index(1, i)] * t2 + x[map.Index(2, i)] * nn;
    t.h[i] = x[map.Index(3, i)] * t1 + x[map.Index(4, i)] * t2 + x[map.Index(5, i)] * nn;
  }
  return t;
}

namespace
{

constexpr double kFourPi = 4.0 * pi;

// Rows of a scalar or vector kernel: one channel per output column group.
CMatrix AssembleScalar(const SurfaceGrid &grid, int channels,
                       const std::function<void(const Vec3 &x, const Vec3 &nx, const Vec3 &y,
                                                const Vec3 &ny, cplx *out)> &kern)
{
  const int n = grid.Size();
  CMatrix a(n, channels * n);
  RotatedQuadrature quad(grid);
  quad.Integrate(
      channels,
      [&](int i, const QuadraturePoints &pts, CMatrix &values) {
        const Vec3 &x = grid.Nodes()[i], &nx = grid.Normals()[i];
        cplx buf[8];
        for (int q = 0; q < quad.NumPoints(); q++)
        {
          kern(x, nx, pts.y[q], pts.normal[q], buf);
          for (int c = 0; c < channels; c++)
          {
            values(c, q) = buf[c] * pts.weight[q];
          }
        }
      },
      [&](int i, const CMatrix &rows) {
        for (int j = 0; j < n; j++)
        {
          for (int c = 0; c < channels; c++)
          {
            a(i, channels * j + c) = rows(c, j);
          }
        }
      });
  return a;
}

struct Coefficients
{
  cplx c1, c2, c3, c4;
  cplx eps_p, eps_m, mu_p, mu_m;
  cplx omega;
};

Coefficients MakeCoefficients(const MediumParams &m)
{
  Coefficients c;
  c.eps_p = m.eps_plus;
  c.eps_m = m.eps_minus;
  c.mu_p = m.mu_plus;
  c.mu_m = m.mu_minus;
  c.omega = m.omega;
  c.c1 = 2.0 / (c.eps_p + c.eps_m);
  c.c2 = 2.0 * c.eps_m / (c.eps_p + c.eps_m);
  c.c3 = 2.0 / (c.mu_p + c.mu_m);
  c.c4 = 2.0 * c.mu_m / (c.mu_p + c.mu_m);
  return c;
}

// Channel layout of the M kernel: 8 inputs (a = e x n, e.n, b = h x n, h.n) for each of
// the six outputs, then S and grad G_0 for J.
constexpr int kMChannels = 48;
constexpr int kJChannels = 4;

inline void PutVec(cplx *dst, const CVec3 &v)
{
  dst[0] = v[0];
  dst[1] = v[1];
  dst[2] = v[2];
}

void MKernel(const Coefficients &c, const WaveNumberPair &kp, const Vec3 &x, const Vec3 &nx,
             const Vec3 &t1, const Vec3 &t2, const Vec3 &y, const Vec3 &ny, cplx *ch)
{
  const Vec3 d = x - y;
  const double r = d.norm();
  const CVec3 dc = d.cast<cplx>();
  const CVec3 nxc = nx.cast<cplx>();
  const CVec3 dn = (nx - ny).cast<cplx>();

  const cplx gm = HelmholtzGreenRadial(kp.k_minus, r);
  const CVec3 grad_m = (HelmholtzGreenRadialDerivative(kp.k_minus, r) / r) * dc;
  const cplx gd = GreenDifferenceRadial(kp, r);
  const CVec3 grad_d = (GreenDifferenceRadialDerivative(kp, r) / r) * dc;
  const cplx dnm = Dot(nxc, grad_m);
  const cplx dnd = Dot(nxc, grad_d);
  const CVec3 gdxn = Cross(grad_d, nxc);

  // Bracketed kernels written as stable difference plus material jump times G-.
  const cplx kd_eps = c.eps_p * dnd + (c.eps_p - c.eps_m) * dnm;
  const CVec3 g_eps = c.eps_p * grad_d + (c.eps_p - c.eps_m) * grad_m;
  const cplx kd_mu = c.mu_p * dnd + (c.mu_p - c.mu_m) * dnm;
  const CVec3 g_mu = c.mu_p * grad_d + (c.mu_p - c.mu_m) * grad_m;
  const cplx kd2 = dnd + (1.0 - c.eps_p / c.eps_m) * dnm;
  const cplx kd4 = dnd + (1.0 - c.mu_p / c.mu_m) * dnm;
  const cplx g_epsmu = c.eps_p * c.mu_p * gd + (c.eps_p * c.mu_p - c.eps_m * c.mu_m) * gm;
  const cplx g_mu_s = c.mu_p * gd + (c.mu_p - c.mu_m) * gm;
  const cplx g_eps_s = c.eps_p * gd + (c.eps_p - c.eps_m) * gm;
  const cplx iw = I * c.omega;

  const Vec3 us[2] = {-t2, t1};
  for (int k = 0; k < 2; k++)
  {
    const CVec3 u = us[k].cast<cplx>();
    const CVec3 nxu = nx.cross(us[k]).cast<cplx>();
    const cplx ug_eps = (u.array() * g_eps.array()).sum();
    const cplx ug_mu = (u.array() * g_mu.array()).sum();
    const cplx ugdxn = (u.array() * gdxn.array()).sum();
    cplx *e = ch + 8 * k;
    PutVec(e, -c.c1 * (-kd_eps * u + ug_eps * dn));
    e[3] = -c.c1 * (-c.eps_p * ugdxn);
    PutVec(e + 4, -c.c1 * (-iw * g_epsmu * nxu));
    e[7] = 0.0;
    cplx *h = ch + 8 * (3 + k);
    PutVec(h, -c.c3 * (iw * g_epsmu * nxu));
    h[3] = 0.0;
    PutVec(h + 4, -c.c3 * (-kd_mu * u + ug_mu * dn));
    h[7] = -c.c3 * (-c.mu_p * ugdxn);
  }
  cplx *en = ch + 16;
  PutVec(en, -c.c2 * gdxn);
  en[3] = c.c2 * kd2;
  PutVec(en + 4, c.c2 * iw * g_mu_s * nxc);
  en[7] = 0.0;
  cplx *hn = ch + 40;
  PutVec(hn, -c.c4 * iw * g_eps_s * nxc);
  hn[3] = 0.0;
  PutVec(hn + 4, -c.c4 * gdxn);
  hn[7] = c.c4 * kd4;
}

void JKernel(const Vec3 &x, const Vec3 &y, cplx *ch)
{
  const Vec3 d = x - y;
  const double r = d.norm();
  ch[0] = 1.0 / (kFourPi * r);
  const Vec3 g = -d / (kFourPi * r * r * r);
  ch[1] = g[0];
  ch[2] = g[1];
  ch[3] = g[2];
}

}  // namespace

void StreamSystemRows(const SurfaceGrid &grid, const MediumParams &medium, cplx m_scale, cplx j_scale,
                      const SystemRowSink &sink)
{
  medium.Validate();
  const int n = grid.Size();
  const BlockMap map(n);
  const bool with_m = m_scale != 0.0 && !medium.Identical();
  const bool with_j = j_scale != 0.0;
  const int m_off = 0, j_off = with_m ? kMChannels : 0;
  const int channels = j_off + (with_j ? kJChannels : 0);
  CMatrix out(6, map.Size());
  if (channels == 0)
  {
    out.setZero();
    for (int i = 0; i < n; i++)
    {
      sink(i, out);
    }
    return;
  }
  const Coefficients coef = MakeCoefficients(medium);
  const WaveNumberPair kp = medium.WaveNumbers();
  const cplx w = medium.omega;
  const cplx j_en = j_scale * w * w * medium.eps_plus, j_hn = j_scale * w * w * medium.mu_plus;
  const cplx j_b = -j_scale * I * w, j_a = j_scale * I * w;

  RotatedQuadrature quad(grid);
  std::vector<cplx> buf(channels);
  quad.Integrate(
      channels,
      [&](int i, const QuadraturePoints &pts, CMatrix &values) {
        const Vec3 &x = grid.Nodes()[i], &nx = grid.Normals()[i];
        const Vec3 &t1 = grid.Tangent1()[i], &t2 = grid.Tangent2()[i];
        for (int q = 0; q < quad.NumPoints(); q++)
        {
          if (with_m)
          {
            MKernel(coef, kp, x, nx, t1, t2, pts.y[q], pts.normal[q], buf.data() + m_off);
          }
          if (with_j)
          {
            JKernel(x, pts.y[q], buf.data() + j_off);
          }
          const double wq = pts.weight[q];
          for (int c = 0; c < channels; c++)
          {
            values(c, q) = buf[c] * wq;
          }
        }
      },
      [&](int i, const CMatrix &rows) {
        out.setZero();
        for (int j = 0; j < n; j++)
        {
          const CVec3 t1 = grid.Tangent1()[j].cast<cplx>(), t2 = grid.Tangent2()[j].cast<cplx>();
          const int ea = map.Index(0, j), eb = map.Index(1, j), en = map.Index(2, j);
          const int ha = map.Index(3, j), hb = map.Index(4, j), hn = map.Index(5, j);
          // a = -alpha t2 + beta t1 for the tangential DOFs (alpha, beta) of node j.
          auto put_tangential = [&](int o, const CVec3 &g, int col_a, int col_b) {
            out(o, col_a) += -(g[0] * t2[0] + g[1] * t2[1] + g[2] * t2[2]);
            out(o, col_b) += g[0] * t1[0] + g[1] * t1[1] + g[2] * t1[2];
          };
          if (with_m)
          {
            for (int o = 0; o < 6; o++)
            {
              const int b0 = m_off + 8 * o;
              put_tangential(o, m_scale * CVec3(rows(b0, j), rows(b0 + 1, j), rows(b0 + 2, j)), ea, eb);
              out(o, en) += m_scale * rows(b0 + 3, j);
              put_tangential(o, m_scale * CVec3(rows(b0 + 4, j), rows(b0 + 5, j), rows(b0 + 6, j)), ha, hb);
              out(o, hn) += m_scale * rows(b0 + 7, j);
            }
          }
          if (with_j)
          {
            const CVec3 g(rows(j_off + 1, j), rows(j_off + 2, j), rows(j_off + 3, j));
            out(2, en) += j_en * rows(j_off, j);
            put_tangential(2, j_b * g, ha, hb);
            out(5, hn) += j_hn * rows(j_off, j);
            put_tangential(5, j_a * g, ea, eb);
          }
        }
        sink(i, out);
      });
}

namespace
{

DenseBlockOperator MakeBlockOperator(const SurfaceGrid &grid, const MediumParams &medium, cplx m_scale,
                                     cplx j_scale, bool identity)
{
  DenseBlockOperator op;
  op.blocks = BlockMap(grid.Size());
  op.shape = grid.Shape();
  op.n_polar = grid.NPolar();
  op.n_azimuthal = grid.NAzimuthal();
  op.medium = medium;
  const int nd = op.blocks.Size();
  op.matrix.resize(nd, nd);
  StreamSystemRows(grid, medium, m_scale, j_scale, [&](int i, const CMatrix &rows) {
    for (int o = 0; o < 6; o++)
    {
      op.matrix.row(op.blocks.Index(o, i)) = rows.row(o);
    }
  });
  if (identity)
  {
    op.matrix.diagonal().array() += 1.0;
  }
  return op;
}

}  // namespace

DenseBlockOperator AssembleM(const SurfaceGrid &grid, const MediumParams &medium)
{
  return MakeBlockOperator(grid, medium, 1.0, 0.0, false);
}

DenseBlockOperator AssembleJ(const SurfaceGrid &grid, const MediumParams &medium)
{
  return MakeBlockOperator(grid, medium, 0.0, 1.0, false);
}

CMatrix AssembleSystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi)
{
  return std::move(MakeBlockOperator(grid, medium, 1.0, xi, true).matrix);
}

CVector ApplySystem(const SurfaceGrid &grid, const MediumParams &medium, cplx xi, const CVector &x)
{
  const BlockMap map(grid.Size());
  if (x.size() != map.Size())
  {
    throw PreconditionError("vector size does not match the grid");
  }
  CVector y = x;
  StreamSystemRows(grid, medium, 1.0, xi, [&](int i, const CMatrix &rows) {
    const CVector r = rows * x;
    for (int o = 0; o < 6; o++)
    {
      y[map.Index(o, i)] += r[o];
    }
  });
  return y;
}

namespace
{

// Right-multiplies each 3-column node block by I - n n^T, so only the tangential part of
// the density reaches the interpolant.
CMatrix TangentialColumns(const SurfaceGrid &grid, CMatrix a)
{
  for (int j = 0; j < grid.Size(); j++)
  {
    const Vec3 &nj = grid.Normals()[j];
    const CMatrix blk = a.middleCols(3 * j, 3);
    const Eigen::Matrix3d p = Eigen::Matrix3d::Identity() - nj * nj.transpose();
    a.middleCols(3 * j, 3) = blk * p.cast<cplx>();
  }
  return a;
}

}  // namespace

CMatrix AssembleSingleLayer(const SurfaceGrid &grid, cplx k)
{
  CMatrix a = AssembleScalar(grid, 1, [k](const Vec3 &x, const Vec3 &, const Vec3 &y, const Vec3 &, cplx *out) {
    out[0] = HelmholtzGreenRadial(k, (x - y).norm());
  });
  // The interpolant only sees degrees <= L; the remaining grid modes get the sphere
  // eigenvalue of degree L + 1 so the matrix stays injective.
  const int n = grid.Size(), L = MaxResolvedDegree(grid);
  const double tail = std::sqrt(grid.Area() / kFourPi) / (2.0 * L + 3.0);
  const double *w = grid.ReferenceWeights().data();
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < n; j++)
    {
      const double t = std::clamp(grid.Directions()[i].dot(grid.Directions()[j]), -1.0, 1.0);
      a(i, j) -= tail * ZonalKernel(L, t) * w[j];
    }
    a(i, i) += tail;
  }
  return a;
}

CMatrix AssembleK(const SurfaceGrid &grid, cplx k)
{
  return TangentialColumns(
      grid, AssembleScalar(grid, 3, [k](const Vec3 &x, const Vec3 &, const Vec3 &y, const Vec3 &ny, cplx *out) {
        const Vec3 d = x - y;
        const double r = d.norm();
        const CVec3 g = (HelmholtzGreenRadialDerivative(k, r) / r) * d.cast<cplx>();
        PutVec(out, Cross(g, ny.cast<cplx>()));
      }));
}

CMatrix AssembleKDifference(const SurfaceGrid &grid, const WaveNumberPair &kp)
{
  return TangentialColumns(
      grid, AssembleScalar(grid, 3, [kp](const Vec3 &x, const Vec3 &, const Vec3 &y, const Vec3 &ny, cplx *out) {
        const Vec3 d = x - y;
        const double r = d.norm();
        const CVec3 g = (GreenDifferenceRadialDerivative(kp, r) / r) * d.cast<cplx>();
        PutVec(out, Cross(g, ny.cast<cplx>()));
      }));
}

CMatrix AssembleD(const SurfaceGrid &grid)
{
  return AssembleK(grid, 0.0);
}

ConstraintResidual ConstraintResiduals(const SurfaceGrid &grid, const MediumParams &medium, const TraceField &t)
{
  medium.Validate();
  const int n = grid.Size();
  if (t.Size() != n)
  {
    throw PreconditionError("trace size does not match the grid");
  }
  ConstraintResidual res{CVector::Zero(n), CVector::Zero(n)};
  if (medium.Identical())
  {
    return res;
  }
  const WaveNumberPair kp = medium.WaveNumbers();
  const CVector en = NormalPart(grid, t.e), hn = NormalPart(grid, t.h);
  const std::vector<CVec3> a = CrossNormal(grid, t.e), b = CrossNormal(grid, t.h);
  const cplx iw = I * medium.omega;
  RotatedQuadrature quad(grid);
  // (K+ - K-) w = int grad(G+ - G-) . (n(y) x w) = -int grad(G+ - G-) . (w x n).
  quad.Integrate(
      4,
      [&](int i, const QuadraturePoints &pts, CMatrix &values) {
        const Vec3 &x = grid.Nodes()[i];
        for (int q = 0; q < quad.NumPoints(); q++)
        {
          const Vec3 d = x - pts.y[q];
          const double r = d.norm();
          const double w = pts.weight[q];
          values(0, q) = GreenDifferenceRadial(kp, r) * w;
          const cplx dr = GreenDifferenceRadialDerivative(kp, r) / r * w;
          values(1, q) = dr * d[0];
          values(2, q) = dr * d[1];
          values(3, q) = dr * d[2];
        }
      },
      [&](int i, const CMatrix &rows) {
        cplx s_e = 0.0, s_h = 0.0, kb = 0.0, ka = 0.0;
        for (int j = 0; j < n; j++)
        {
          s_e += rows(0, j) * en[j];
          s_h += rows(0, j) * hn[j];
          for (int c = 0; c < 3; c++)
          {
            kb += rows(1 + c, j) * b[j][c];
            ka += rows(1 + c, j) * a[j][c];
          }
        }
        res.r1[i] = -iw * medium.eps_plus * s_e - kb;
        res.r2[i] = iw * medium.mu_plus * s_h - ka;
      });
  return res;
}

CMatrix AssembleReducedNormal(const SurfaceGrid &grid, const MediumParams &medium, NormalField which, cplx xi)
{
  medium.Validate();
  const Coefficients coef = MakeCoefficients(medium);
  const WaveNumberPair kp = medium.WaveNumbers();
  const bool electric = which == NormalField::Electric;
  const cplx pre = electric ? coef.c2 : coef.c4;
  const cplx ratio = electric ? coef.eps_p / coef.eps_m : coef.mu_p / coef.mu_m;
  const cplx stab = xi * medium.omega * medium.omega * (electric ? medium.eps_plus : medium.mu_plus);
  CMatrix a = AssembleScalar(grid, 1, [&](const Vec3 &x, const Vec3 &nx, const Vec3 &y, const Vec3 &, cplx *out) {
    const Vec3 d = x - y;
    const double r = d.norm();
    const double dn = d.dot(nx) / r;
    const cplx kd = (GreenDifferenceRadialDerivative(kp, r) +
                     (1.0 - ratio) * HelmholtzGreenRadialDerivative(kp.k_minus, r)) * dn;
    out[0] = pre * kd + stab / (kFourPi * r);
  });
  a.diagonal().array() += 1.0;
  return a;
}

void WriteMatrixBinary(const std::string &path, const CMatrix &a)
{
  if (a.rows() != a.cols())
  {
    throw PreconditionError("matrix dump expects a square matrix");
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
  {
    throw ConfigError("cannot open " + path + " for writing");
  }
  const std::int64_t n = a.rows();
  f.write(reinterpret_cast<const char *>(&n), sizeof(n));
  for (Eigen::Index i = 0; i < a.rows(); i++)
  {
    for (Eigen::Index j = 0; j < a.cols(); j++)
    {
      const double v[2] = {a(i, j).real(), a(i, j).imag()};
      f.write(reinterpret_cast<const char *>(v), sizeof(v));
    }
  }
}

CMatrix ReadMatrixBinary(const std::string &path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f)
  {
    throw ConfigError("cannot open " + path);
  }
  std::int64_t n = 0;
  f.read(reinterpret_cast<char *>(&n), sizeof(n));
  if (!f || n < 0)
  {
    throw ConfigError("malformed matrix dump " + path);
  }
  CMatrix a(n, n);
  for (std::int64_t i = 0; i < n; i++)
  {
    for (std::int64_t j = 0; j < n; j++)
    {
      double v[2];
      f.read(reinterpret_cast<char *>(v), sizeof(v));
      a(i, j) = cplx(v[0], v[1]);
    }
  }
  if (!f)
  {
    throw ConfigError("truncated matrix dump " + path);
  }
  return a;
}

}  // namespace maxsie
