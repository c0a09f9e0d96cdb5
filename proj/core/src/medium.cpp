#include "maxsie/medium.hpp"

#include <cmath>

#include "maxsie/errors.hpp"

namespace maxsie
{

cplx MediumParams::KPlus() const
{
  return omega * std::sqrt(eps_plus * mu_plus);
}

cplx MediumParams::KMinus() const
{
  return omega * std::sqrt(eps_minus * mu_minus);
}

void MediumParams::Validate() const
{
  if (!(eps_plus > 0.0) || !std::isfinite(eps_plus))
  {
    throw ParameterError("eps_plus must be positive");
  }
  if (!(eps_minus.real() > 0.0) || !(eps_minus.imag() >= 0.0) || !std::isfinite(std::abs(eps_minus)))
  {
    throw ParameterError("eps_minus needs a positive real part and a non-negative imaginary part");
  }
  if (!(mu_plus > 0.0) || !(mu_minus > 0.0) || !std::isfinite(mu_plus) || !std::isfinite(mu_minus))
  {
    throw ParameterError("permeabilities must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega))
  {
    throw ParameterError("omega must be positive");
  }
}

MediumParams MediumParams::WithOmega(double w) const
{
  MediumParams m = *this;
  m.omega = w;
  return m;
}

MediumParams MediumParams::FromWaveNumbers(double eps_plus, double eps_minus, double k_plus, double k_minus)
{
  if (!(eps_plus > 0.0) || !(eps_minus > 0.0) || !(k_plus > 0.0) || !(k_minus > 0.0))
  {
    throw ParameterError("wavenumbers and permittivities must be positive");
  }
  MediumParams m;
  m.eps_plus = eps_plus;
  m.eps_minus = eps_minus;
  m.mu_plus = 1.0;
  m.omega = k_plus / std::sqrt(eps_plus);
  m.mu_minus = (k_minus / m.omega) * (k_minus / m.omega) / eps_minus;
  return m;
}

}  // namespace maxsie
