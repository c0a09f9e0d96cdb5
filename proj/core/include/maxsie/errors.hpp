#ifndef MAXSIE_ERRORS_HPP
#define MAXSIE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace maxsie
{

// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid grid orders, malformed run configuration, bad flags.
class ConfigError : public Error
{
public:
  using Error::Error;
};

// Caller violated a documented precondition on the data it passed in.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

// Operation is only defined for a geometry class the grid does not belong to.
class UnsupportedGeometryError : public Error
{
public:
  using Error::Error;
};

// Kernel evaluated on its singular set (x == y).
class SingularEvaluationError : public Error
{
public:
  using Error::Error;
};

// Material parameters outside the admissible class.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// Operators that do not belong together (different grid, medium or shape).
class AssemblyError : public Error
{
public:
  using Error::Error;
};

// Plane-wave direction/polarization inconsistent.
class InputError : public Error
{
public:
  using Error::Error;
};

// Oracle series or quadrature could not reach the requested accuracy.
class AccuracyError : public Error
{
public:
  using Error::Error;
};

// Pencil hypotheses (self-adjointness, positivity, nullspace invariance) unmet.
class HypothesisError : public Error
{
public:
  using Error::Error;
};

// Dense factorization found the system numerically singular.
class NearSingularSystemError : public Error
{
public:
  NearSingularSystemError(const std::string &what, double sigma_min, double sigma_max)
    : Error(what), sigma_min_(sigma_min), sigma_max_(sigma_max)
  {
  }
  double SigmaMin() const { return sigma_min_; }
  double SigmaMax() const { return sigma_max_; }

private:
  double sigma_min_, sigma_max_;
};

// Newton iteration failed; carries the iterate history for diagnostics.
class RootNotFoundError : public Error
{
public:
  struct Iterate
  {
    double k_plus, k_minus, residual;
  };
  RootNotFoundError(const std::string &what, std::vector<Iterate> trace)
    : Error(what), trace_(std::move(trace))
  {
  }
  const std::vector<Iterate> &Trace() const { return trace_; }

private:
  std::vector<Iterate> trace_;
};

}  // namespace maxsie

#endif  // MAXSIE_ERRORS_HPP
