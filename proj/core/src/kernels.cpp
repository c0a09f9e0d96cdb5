#include "maxsie/kernels.hpp"

#include <cmath>

#include "maxsie/errors.hpp"

namespace maxsie
{

namespace
{

constexpr double kFourPi = 4.0 * pi;

double Distance(const Vec3 &x, const Vec3 &y)
{
  const double r = (x - y).norm();
  if (r == 0.0)
  {
    throw SingularEvaluationError("Green function evaluated at coincident points");
  }
  return r;
}

bool UseSeries(const WaveNumberPair &kp, double r, double switch_radius)
{
  const double kmax = std::max(std::abs(kp.k_plus), std::abs(kp.k_minus));
  return r < switch_radius || kmax * r < 0.5;
}

}  // namespace

cplx Expm1(cplx z)
{
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

cplx HelmholtzGreenRadial(cplx k, double r)
{
  return std::exp(I * k * r) / (kFourPi * r);
}

cplx HelmholtzGreenRadialDerivative(cplx k, double r)
{
  return (I * k - 1.0 / r) * std::exp(I * k * r) / (kFourPi * r);
}

cplx HelmholtzGreen(cplx k, const Vec3 &x, const Vec3 &y)
{
  return HelmholtzGreenRadial(k, Distance(x, y));
}

CVec3 GradHelmholtzGreen(cplx k, const Vec3 &x, const Vec3 &y)
{
  const double r = Distance(x, y);
  return (HelmholtzGreenRadialDerivative(k, r) / r) * (x - y).cast<cplx>();
}

// 4 pi (G+ - G-) = sum_{n >= 1} i^n d_n r^{n-1} / n!, d_n = k+^n - k-^n built by
// d_n = k+ d_{n-1} + (k+ - k-) k-^{n-1}.
cplx GreenDifferenceSeries(const WaveNumberPair &kp, double r)
{
  const cplx dk = kp.k_plus - kp.k_minus;
  cplx d = dk, km_pow = 1.0, term_coef = I;  // i^n / n! for n = 1
  cplx sum = term_coef * d;
  double rp = 1.0;
  for (int n = 2; n < 200; n++)
  {
    km_pow *= kp.k_minus;
    d = kp.k_plus * d + dk * km_pow;
    term_coef *= I / double(n);
    rp *= r;
    const cplx term = term_coef * d * rp;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum))
    {
      break;
    }
  }
  return sum / kFourPi;
}

cplx GreenDifferenceDerivativeSeries(const WaveNumberPair &kp, double r)
{
  const cplx dk = kp.k_plus - kp.k_minus;
  cplx d = dk, km_pow = 1.0, term_coef = I;
  cplx sum = 0.0;
  double rp = 1.0;  // r^{n-2}
  for (int n = 2; n < 200; n++)
  {
    km_pow *= kp.k_minus;
    d = kp.k_plus * d + dk * km_pow;
    term_coef *= I / double(n);
    if (n > 2)
    {
      rp *= r;
    }
    const cplx term = term_coef * d * double(n - 1) * rp;
    sum += term;
    if (n > 2 && std::abs(term) < 1e-16 * std::abs(sum))
    {
      break;
    }
  }
  return sum / kFourPi;
}

cplx GreenDifferenceDirect(const WaveNumberPair &kp, double r)
{
  return std::exp(I * kp.k_minus * r) * Expm1(I * (kp.k_plus - kp.k_minus) * r) / (kFourPi * r);
}

cplx GreenDifferenceDerivativeDirect(const WaveNumberPair &kp, double r)
{
  const cplx em = std::exp(I * kp.k_minus * r);
  const cplx m1 = Expm1(I * (kp.k_plus - kp.k_minus) * r);
  const cplx f = em * m1 / r;
  const cplx a = I * (kp.k_plus - kp.k_minus) * std::exp(I * kp.k_plus * r) + I * kp.k_minus * em * m1;
  return (a - f) / (kFourPi * r);
}

cplx GreenDifferenceRadial(const WaveNumberPair &kp, double r, double switch_radius)
{
  if (kp.k_plus == kp.k_minus)
  {
    return 0.0;
  }
  return UseSeries(kp, r, switch_radius) ? GreenDifferenceSeries(kp, r) : GreenDifferenceDirect(kp, r);
}

cplx GreenDifferenceRadialDerivative(const WaveNumberPair &kp, double r, double switch_radius)
{
  if (kp.k_plus == kp.k_minus)
  {
    return 0.0;
  }
  return UseSeries(kp, r, switch_radius) ? GreenDifferenceDerivativeSeries(kp, r)
                                         : GreenDifferenceDerivativeDirect(kp, r);
}

cplx GreenDifference(const WaveNumberPair &kp, const Vec3 &x, const Vec3 &y, double switch_radius)
{
  return GreenDifferenceRadial(kp, (x - y).norm(), switch_radius);
}

CVec3 GradGreenDifference(const WaveNumberPair &kp, const Vec3 &x, const Vec3 &y, double switch_radius)
{
  const double r = (x - y).norm();
  if (r == 0.0)
  {
    // Direction undefined on the diagonal; the radial derivative stays finite.
    return CVec3::Zero();
  }
  return (GreenDifferenceRadialDerivative(kp, r, switch_radius) / r) * (x - y).cast<cplx>();
}

}  // namespace maxsie
