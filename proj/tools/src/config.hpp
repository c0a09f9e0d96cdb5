#ifndef MAXSIE_TOOLS_CONFIG_HPP
#define MAXSIE_TOOLS_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxsie/geom.hpp"
#include "maxsie/medium.hpp"
#include "maxsie/solve.hpp"

namespace maxsie::cli
{

struct GeometryConfig
{
  std::string shape = "sphere";
  double radius = 1.0;
  Vec3 semi_axes = Vec3::Ones();
  int n_polar = 12;
  int n_azimuthal = 0;  // 0: twice n_polar

  SurfaceGrid Build() const;
};

struct SolverConfig
{
  cplx xi = 1.0;
  double tolerance = 1e-4;  // oracle mismatch threshold
  std::string oracle = "none";
  int mie_degree = 0;       // 0: k+ R + 20
};

struct OutputConfig
{
  std::string report, traces, csv;
};

struct SingularConfig
{
  double eps_plus = 1.0, eps_minus = 6.0;
  std::array<double, 2> guess{0.8, 1.8};
  bool scan = false;
  std::array<double, 2> k_plus_range{0.1, 5.0}, k_minus_range{0.1, 5.0};
  int cells = 200;
  int max_iterations = 100;
};

struct PencilConfig
{
  std::string kind = "example3x3";
  std::vector<cplx> xis;
  std::vector<int> truncations{20};
  int n = 64;
  int n_null = 8;
  int samples = 200;
};

struct RunConfig
{
  GeometryConfig geometry;
  MediumParams medium{1.0, 2.0, 1.0, 1.0, 1.0};
  PlaneWave incident;
  SolverConfig solver;
  OutputConfig output;
  std::vector<double> omegas;
  SingularConfig singular;
  PencilConfig pencil;
  std::uint64_t seed = 1;
};

// Throws ConfigError on unknown keys or malformed values and ParameterError /
// InputError when the medium or incident wave is inadmissible.
RunConfig ParseConfig(const nlohmann::json &doc);
RunConfig LoadConfig(const std::string &path);

struct Overrides
{
  std::optional<cplx> xi;
  std::optional<double> omega;
  std::optional<int> order;
};
void ApplyOverrides(RunConfig &config, const Overrides &o);

// "1.5" or "1.5,-2" (real, imaginary).
cplx ParseComplexFlag(const std::string &text);

nlohmann::json ComplexJson(cplx z);

}  // namespace maxsie::cli

#endif  // MAXSIE_TOOLS_CONFIG_HPP
