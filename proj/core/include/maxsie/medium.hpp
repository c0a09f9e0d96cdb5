#ifndef MAXSIE_MEDIUM_HPP
#define MAXSIE_MEDIUM_HPP

#include "maxsie/kernels.hpp"
#include "maxsie/types.hpp"

namespace maxsie
{

// Exterior (+) and interior (-) material constants at angular frequency omega.
// The interior permittivity may be lossy.
struct MediumParams
{
  double eps_plus = 1.0;
  cplx eps_minus = 1.0;
  double mu_plus = 1.0;
  double mu_minus = 1.0;
  double omega = 1.0;

  cplx KPlus() const;
  cplx KMinus() const;
  WaveNumberPair WaveNumbers() const { return {KPlus(), KMinus()}; }

  bool Identical() const { return eps_minus == cplx(eps_plus) && mu_minus == mu_plus; }

  // Throws ParameterError outside Re eps- > 0, Im eps- >= 0, eps+, mu+-, omega > 0.
  void Validate() const;

  MediumParams WithOmega(double w) const;

  // Real medium realizing given exterior/interior wavenumbers with mu+ = 1 and
  // omega = k+/sqrt(eps+): mu- is chosen so that omega sqrt(eps- mu-) = k-.
  static MediumParams FromWaveNumbers(double eps_plus, double eps_minus, double k_plus, double k_minus);
};

}  // namespace maxsie

#endif  // MAXSIE_MEDIUM_HPP
