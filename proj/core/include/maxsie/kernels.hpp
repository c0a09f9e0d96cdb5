#ifndef MAXSIE_KERNELS_HPP
#define MAXSIE_KERNELS_HPP

#include "maxsie/types.hpp"

namespace maxsie
{

struct WaveNumberPair
{
  cplx k_plus;
  cplx k_minus;
};

inline constexpr double kDefaultSwitchRadius = 1e-3;

// e^{ikr} / (4 pi r) and its x-gradient. Throw SingularEvaluationError at x == y.
cplx HelmholtzGreen(cplx k, const Vec3 &x, const Vec3 &y);
CVec3 GradHelmholtzGreen(cplx k, const Vec3 &x, const Vec3 &y);

// Radial forms, r > 0: value and d/dr.
cplx HelmholtzGreenRadial(cplx k, double r);
cplx HelmholtzGreenRadialDerivative(cplx k, double r);

// G_{k+} - G_{k-} and its x-gradient, finite at x == y. Below switch_radius (or when
// |k| r is small) a Taylor series in r replaces the direct difference.
cplx GreenDifference(const WaveNumberPair &kp, const Vec3 &x, const Vec3 &y,
                     double switch_radius = kDefaultSwitchRadius);
CVec3 GradGreenDifference(const WaveNumberPair &kp, const Vec3 &x, const Vec3 &y,
                          double switch_radius = kDefaultSwitchRadius);

cplx GreenDifferenceRadial(const WaveNumberPair &kp, double r,
                           double switch_radius = kDefaultSwitchRadius);
cplx GreenDifferenceRadialDerivative(const WaveNumberPair &kp, double r,
                                     double switch_radius = kDefaultSwitchRadius);

// Same quantities forced through one branch, used to check continuity at the switch.
cplx GreenDifferenceSeries(const WaveNumberPair &kp, double r);
cplx GreenDifferenceDirect(const WaveNumberPair &kp, double r);
cplx GreenDifferenceDerivativeSeries(const WaveNumberPair &kp, double r);
cplx GreenDifferenceDerivativeDirect(const WaveNumberPair &kp, double r);

// e^z - 1 without cancellation for small |z|.
cplx Expm1(cplx z);

}  // namespace maxsie

#endif  // MAXSIE_KERNELS_HPP
