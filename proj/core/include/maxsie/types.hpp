#ifndef MAXSIE_TYPES_HPP
#define MAXSIE_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace maxsie
{

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Bilinear products; Eigen's cross() and dot() conjugate complex operands.
inline CVec3 Cross(const CVec3 &a, const CVec3 &b)
{
  return CVec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

inline cplx Dot(const CVec3 &a, const CVec3 &b)
{
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace maxsie

#endif  // MAXSIE_TYPES_HPP
