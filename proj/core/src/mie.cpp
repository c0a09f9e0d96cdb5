#include <cmath>
#include <sstream>

#include "maxsie/analytic.hpp"
#include "maxsie/errors.hpp"

namespace maxsie
{

std::vector<cplx> SphericalBesselJ(int n, cplx z)
{
  std::vector<cplx> j(n + 1);
  if (z == 0.0)
  {
    j.assign(n + 1, 0.0);
    j[0] = 1.0;
    return j;
  }
  // Ratios r_l = j_l / j_{l-1} from a continued fraction started well above n.
  const int top = n + static_cast<int>(std::abs(z)) + 40;
  std::vector<cplx> ratio(top + 2, 0.0);
  for (int l = top; l >= 1; l--)
  {
    ratio[l] = z / (2.0 * l + 1.0 - z * ratio[l + 1]);
  }
  j[0] = std::abs(z) < 1e-4 ? 1.0 - z * z / 6.0 + z * z * z * z / 120.0 : std::sin(z) / z;
  for (int l = 1; l <= n; l++)
  {
    j[l] = ratio[l] * j[l - 1];
  }
  return j;
}

std::vector<double> SphericalBesselY(int n, double x)
{
  std::vector<double> y(n + 1);
  y[0] = -std::cos(x) / x;
  if (n >= 1)
  {
    y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  }
  for (int l = 1; l < n; l++)
  {
    y[l + 1] = (2.0 * l + 1.0) / x * y[l] - y[l - 1];
  }
  return y;
}

namespace
{

struct Radial
{
  std::vector<cplx> z;   // z_n(rho)
  std::vector<cplx> dz;  // [rho z_n(rho)]' / rho
};

Radial RadialFunctions(int n, cplx rho, bool hankel)
{
  Radial f;
  f.z = SphericalBesselJ(n, rho);
  if (hankel)
  {
    const std::vector<double> y = SphericalBesselY(n, rho.real());
    for (int l = 0; l <= n; l++)
    {
      f.z[l] += I * y[l];
    }
  }
  f.dz.assign(n + 1, 0.0);
  for (int l = 1; l <= n; l++)
  {
    f.dz[l] = f.z[l - 1] - double(l) * f.z[l] / rho;
  }
  return f;
}

cplx Solve2(cplx a11, cplx a12, cplx a21, cplx a22, cplx b1, cplx b2, cplx &x2)
{
  const cplx det = a11 * a22 - a12 * a21;
  x2 = (a11 * b2 - a21 * b1) / det;
  return (b1 * a22 - b2 * a12) / det;
}

}  // namespace

MieSolution::MieSolution(const MediumParams &medium, double radius, const PlaneWave &wave, int max_degree)
  : medium_(medium), radius_(radius), wave_(wave), n_max_(max_degree)
{
  medium.Validate();
  wave.Validate();
  if (!(radius > 0.0))
  {
    throw PreconditionError("sphere radius must be positive");
  }
  const cplx k = medium.KPlus(), k1 = medium.KMinus();
  const double x = k.real() * radius;
  if (max_degree < x + 15.0)
  {
    throw PreconditionError("Mie series degree must be at least k R + 15");
  }
  const cplx mx = k1 * radius;
  const Radial ext_j = RadialFunctions(n_max_, x, false), ext_h = RadialFunctions(n_max_, x, true);
  const Radial in_j = RadialFunctions(n_max_, mx, false);
  const cplx kp = k / medium.mu_plus, km = k1 / medium.mu_minus;
  a_.assign(n_max_ + 1, 0.0);
  b_ = c_ = d_ = a_;
  std::vector<double> size(n_max_ + 1, 0.0);
  for (int n = 1; n <= n_max_; n++)
  {
    b_[n] = Solve2(ext_h.z[n], in_j.z[n], kp * ext_h.dz[n], km * in_j.dz[n], ext_j.z[n], kp * ext_j.dz[n], c_[n]);
    a_[n] = Solve2(ext_h.dz[n], in_j.dz[n], kp * ext_h.z[n], km * in_j.z[n], ext_j.dz[n], kp * ext_j.z[n], d_[n]);
    const double en = (2.0 * n + 1.0) / (n * (n + 1.0)) * n * (n + 1.0);
    size[n] = en * (std::abs(a_[n]) * std::abs(ext_h.dz[n]) + std::abs(b_[n]) * std::abs(ext_h.z[n]) +
                    std::abs(c_[n]) * std::abs(in_j.z[n]) + std::abs(d_[n]) * std::abs(in_j.dz[n]) +
                    std::abs(ext_j.z[n]) + std::abs(ext_j.dz[n]));
  }
  double peak = 0.0;
  for (double s : size)
  {
    peak = std::max(peak, s);
  }
  if (!(size[n_max_] <= 1e-12 * peak))
  {
    std::ostringstream msg;
    msg << "Mie series not converged at degree " << n_max_ << " (last-term ratio " << size[n_max_] / peak << ")";
    throw AccuracyError(msg.str());
  }
}

void MieSolution::Field(Kind kind, const Vec3 &xw, CVec3 &e, CVec3 &h) const
{
  const Vec3 ex = wave_.polarization, ez = wave_.direction, ey = ez.cross(ex);
  Vec3 xl(xw.dot(ex), xw.dot(ey), xw.dot(ez));
  double r = xl.norm();
  if (r < 1e-12 * radius_)
  {
    xl = Vec3(0.0, 0.0, 1e-12 * radius_);
    r = xl.norm();
  }
  const double ct = xl[2] / r, st = std::hypot(xl[0], xl[1]) / r;
  const double phi = std::atan2(xl[1], xl[0]);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Vec3 rh(st * cp, st * sp, ct), th(ct * cp, ct * sp, -st), ph(-sp, cp, 0.0);

  const bool interior = kind == Kind::Interior;
  const cplx k = interior ? medium_.KMinus() : medium_.KPlus();
  const double mu = interior ? medium_.mu_minus : medium_.mu_plus;
  const cplx rho = k * r;
  const Radial f = RadialFunctions(n_max_, rho, kind == Kind::Scattered);

  // Angular functions pi_n = P_n^1 / sin, tau_n = d P_n^1 / d theta.
  double pi_prev = 0.0, pi_cur = 1.0;
  cplx er = 0.0, et = 0.0, ep = 0.0, hr = 0.0, ht = 0.0, hp = 0.0;
  for (int n = 1; n <= n_max_; n++)
  {
    if (n > 1)
    {
      const double pn = ((2.0 * n - 1.0) / (n - 1.0)) * ct * pi_cur - (double(n) / (n - 1.0)) * pi_prev;
      pi_prev = pi_cur;
      pi_cur = pn;
    }
    const double tau = n * ct * pi_cur - (n + 1.0) * pi_prev;
    const cplx en = std::pow(I, n) * (2.0 * n + 1.0) / (n * (n + 1.0));
    cplx alpha, beta;  // E = alpha M_o1n + beta N_e1n
    switch (kind)
    {
      case Kind::Incident: alpha = 1.0; beta = -I; break;
      case Kind::Scattered: alpha = -b_[n]; beta = I * a_[n]; break;
      case Kind::Interior: alpha = c_[n]; beta = -I * d_[n]; break;
    }
    alpha *= en;
    beta *= en;
    const cplx z = f.z[n], dz = f.dz[n], zr = z / rho;
    const double nn1 = n * (n + 1.0);
    // M_o1n, N_e1n for E; N_o1n, M_e1n for H.
    et += alpha * cp * pi_cur * z + beta * cp * tau * dz;
    ep += -alpha * sp * tau * z - beta * sp * pi_cur * dz;
    er += beta * cp * nn1 * st * pi_cur * zr;
    hr += alpha * sp * nn1 * st * pi_cur * zr;
    ht += alpha * sp * tau * dz - beta * sp * pi_cur * z;
    hp += alpha * cp * pi_cur * dz - beta * cp * tau * z;
  }
  const cplx hs = k / (I * medium_.omega * mu);
  const CVec3 el = er * rh.cast<cplx>() + et * th.cast<cplx>() + ep * ph.cast<cplx>();
  const CVec3 hl = hs * (hr * rh.cast<cplx>() + ht * th.cast<cplx>() + hp * ph.cast<cplx>());
  e = el[0] * ex.cast<cplx>() + el[1] * ey.cast<cplx>() + el[2] * ez.cast<cplx>();
  h = hl[0] * ex.cast<cplx>() + hl[1] * ey.cast<cplx>() + hl[2] * ez.cast<cplx>();
}

void MieSolution::IncidentField(const Vec3 &x, CVec3 &e, CVec3 &h) const
{
  Field(Kind::Incident, x, e, h);
}

void MieSolution::ScatteredField(const Vec3 &x, CVec3 &e, CVec3 &h) const
{
  Field(Kind::Scattered, x, e, h);
}

void MieSolution::InteriorField(const Vec3 &x, CVec3 &e, CVec3 &h) const
{
  Field(Kind::Interior, x, e, h);
}

void MieSolution::TotalField(const Vec3 &x, CVec3 &e, CVec3 &h) const
{
  if (x.norm() < radius_)
  {
    InteriorField(x, e, h);
    return;
  }
  // The incident part is summed in closed form.
  PlaneWaveFields(medium_, wave_, x, e, h);
  CVec3 es, hs;
  ScatteredField(x, es, hs);
  e += es;
  h += hs;
}

TraceField MieSolution::Traces(const SurfaceGrid &grid) const
{
  if (!grid.IsSphere() || std::abs(grid.Shape().Radius() - radius_) > 1e-14 * radius_)
  {
    throw UnsupportedGeometryError("Mie traces need a sphere grid of the same radius");
  }
  TraceField t = TraceField::Zero(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    PlaneWaveFields(medium_, wave_, grid.Nodes()[i], t.e[i], t.h[i]);
    CVec3 es, hs;
    ScatteredField(grid.Nodes()[i], es, hs);
    t.e[i] += es;
    t.h[i] += hs;
  }
  return t;
}

TraceField MieTraces(const SurfaceGrid &grid, const MediumParams &medium, const PlaneWave &wave, int max_degree)
{
  return MieSolution(medium, grid.Shape().Radius(), wave, max_degree).Traces(grid);
}

}  // namespace maxsie
