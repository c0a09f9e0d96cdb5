#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "maxsie/errors.hpp"

namespace maxsie::cli
{

using nlohmann::json;

namespace
{

void CheckKeys(const json &j, const std::set<std::string> &allowed, const std::string &where)
{
  if (!j.is_object())
  {
    throw ConfigError(where + " must be a JSON object");
  }
  for (const auto &[key, value] : j.items())
  {
    if (!allowed.count(key))
    {
      throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
  }
}

double Number(const json &j, const std::string &what)
{
  if (!j.is_number())
  {
    throw ConfigError(what + " must be a number");
  }
  return j.get<double>();
}

int Integer(const json &j, const std::string &what)
{
  if (!j.is_number_integer())
  {
    throw ConfigError(what + " must be an integer");
  }
  return j.get<int>();
}

cplx Complex(const json &j, const std::string &what)
{
  if (j.is_number())
  {
    return j.get<double>();
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
  {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(what + " must be a number or an [re, im] pair");
}

Vec3 Vector(const json &j, const std::string &what)
{
  if (!j.is_array() || j.size() != 3)
  {
    throw ConfigError(what + " must be a 3-vector");
  }
  return Vec3(Number(j[0], what), Number(j[1], what), Number(j[2], what));
}

std::array<double, 2> Pair(const json &j, const std::string &what)
{
  if (!j.is_array() || j.size() != 2)
  {
    throw ConfigError(what + " must be a pair");
  }
  return {Number(j[0], what), Number(j[1], what)};
}

std::string String(const json &j, const std::string &what)
{
  if (!j.is_string())
  {
    throw ConfigError(what + " must be a string");
  }
  return j.get<std::string>();
}

void ParseGeometry(const json &j, GeometryConfig &g)
{
  CheckKeys(j, {"shape", "radius", "semi_axes", "n_polar", "n_azimuthal"}, "geometry");
  if (j.contains("shape")) g.shape = String(j["shape"], "geometry.shape");
  if (g.shape != "sphere" && g.shape != "ellipsoid")
  {
    throw ConfigError("geometry.shape must be \"sphere\" or \"ellipsoid\"");
  }
  if (j.contains("radius")) g.radius = Number(j["radius"], "geometry.radius");
  if (j.contains("semi_axes")) g.semi_axes = Vector(j["semi_axes"], "geometry.semi_axes");
  if (j.contains("n_polar")) g.n_polar = Integer(j["n_polar"], "geometry.n_polar");
  if (j.contains("n_azimuthal")) g.n_azimuthal = Integer(j["n_azimuthal"], "geometry.n_azimuthal");
}

void ParseMedium(const json &j, MediumParams &m)
{
  CheckKeys(j, {"eps_plus", "eps_minus", "mu_plus", "mu_minus", "omega"}, "medium");
  if (j.contains("eps_plus")) m.eps_plus = Number(j["eps_plus"], "medium.eps_plus");
  if (j.contains("eps_minus")) m.eps_minus = Complex(j["eps_minus"], "medium.eps_minus");
  if (j.contains("mu_plus")) m.mu_plus = Number(j["mu_plus"], "medium.mu_plus");
  if (j.contains("mu_minus")) m.mu_minus = Number(j["mu_minus"], "medium.mu_minus");
  if (j.contains("omega")) m.omega = Number(j["omega"], "medium.omega");
}

void ParseSolver(const json &j, SolverConfig &s)
{
  CheckKeys(j, {"xi", "tolerance", "oracle", "mie_degree"}, "solver");
  if (j.contains("xi")) s.xi = Complex(j["xi"], "solver.xi");
  if (j.contains("tolerance")) s.tolerance = Number(j["tolerance"], "solver.tolerance");
  if (j.contains("oracle")) s.oracle = String(j["oracle"], "solver.oracle");
  if (j.contains("mie_degree")) s.mie_degree = Integer(j["mie_degree"], "solver.mie_degree");
  if (s.oracle != "none" && s.oracle != "mie")
  {
    throw ConfigError("solver.oracle must be \"none\" or \"mie\"");
  }
  if (!(s.tolerance > 0.0))
  {
    throw ConfigError("solver.tolerance must be positive");
  }
}

void ParseSingular(const json &j, SingularConfig &s)
{
  CheckKeys(j, {"eps_plus", "eps_minus", "guess", "scan", "k_plus_range", "k_minus_range", "cells", "max_iterations"},
            "singular");
  if (j.contains("eps_plus")) s.eps_plus = Number(j["eps_plus"], "singular.eps_plus");
  if (j.contains("eps_minus")) s.eps_minus = Number(j["eps_minus"], "singular.eps_minus");
  if (j.contains("guess")) s.guess = Pair(j["guess"], "singular.guess");
  if (j.contains("scan"))
  {
    if (!j["scan"].is_boolean()) throw ConfigError("singular.scan must be a boolean");
    s.scan = j["scan"].get<bool>();
  }
  if (j.contains("k_plus_range")) s.k_plus_range = Pair(j["k_plus_range"], "singular.k_plus_range");
  if (j.contains("k_minus_range")) s.k_minus_range = Pair(j["k_minus_range"], "singular.k_minus_range");
  if (j.contains("cells")) s.cells = Integer(j["cells"], "singular.cells");
  if (j.contains("max_iterations")) s.max_iterations = Integer(j["max_iterations"], "singular.max_iterations");
}

void ParsePencil(const json &j, PencilConfig &p)
{
  CheckKeys(j, {"kind", "xis", "truncations", "n", "n_null", "samples"}, "pencil");
  if (j.contains("kind")) p.kind = String(j["kind"], "pencil.kind");
  static const std::set<std::string> kinds{"example3x3", "counterexample", "coercive", "invariant"};
  if (!kinds.count(p.kind))
  {
    throw ConfigError("pencil.kind must be one of example3x3, counterexample, coercive, invariant");
  }
  if (j.contains("xis"))
  {
    if (!j["xis"].is_array()) throw ConfigError("pencil.xis must be an array");
    p.xis.clear();
    for (const auto &v : j["xis"]) p.xis.push_back(Complex(v, "pencil.xis"));
  }
  if (j.contains("truncations"))
  {
    if (!j["truncations"].is_array()) throw ConfigError("pencil.truncations must be an array");
    p.truncations.clear();
    for (const auto &v : j["truncations"]) p.truncations.push_back(Integer(v, "pencil.truncations"));
  }
  if (j.contains("n")) p.n = Integer(j["n"], "pencil.n");
  if (j.contains("n_null")) p.n_null = Integer(j["n_null"], "pencil.n_null");
  if (j.contains("samples")) p.samples = Integer(j["samples"], "pencil.samples");
}

}  // namespace

SurfaceGrid GeometryConfig::Build() const
{
  const int naz = n_azimuthal > 0 ? n_azimuthal : 2 * n_polar;
  if (shape == "sphere")
  {
    return BuildSphereGrid(radius, n_polar, naz);
  }
  return BuildEllipsoidGrid(semi_axes, n_polar, naz);
}

RunConfig ParseConfig(const json &doc)
{
  CheckKeys(doc, {"geometry", "medium", "incident", "solver", "output", "sweep", "singular", "pencil", "seed"},
            "config");
  RunConfig c;
  if (doc.contains("geometry")) ParseGeometry(doc["geometry"], c.geometry);
  if (doc.contains("medium")) ParseMedium(doc["medium"], c.medium);
  if (doc.contains("incident"))
  {
    const json &j = doc["incident"];
    CheckKeys(j, {"direction", "polarization"}, "incident");
    if (j.contains("direction")) c.incident.direction = Vector(j["direction"], "incident.direction");
    if (j.contains("polarization")) c.incident.polarization = Vector(j["polarization"], "incident.polarization");
  }
  if (doc.contains("solver")) ParseSolver(doc["solver"], c.solver);
  if (doc.contains("output"))
  {
    const json &j = doc["output"];
    CheckKeys(j, {"report", "traces", "csv"}, "output");
    if (j.contains("report")) c.output.report = String(j["report"], "output.report");
    if (j.contains("traces")) c.output.traces = String(j["traces"], "output.traces");
    if (j.contains("csv")) c.output.csv = String(j["csv"], "output.csv");
  }
  if (doc.contains("sweep"))
  {
    const json &j = doc["sweep"];
    CheckKeys(j, {"omegas"}, "sweep");
    if (j.contains("omegas"))
    {
      if (!j["omegas"].is_array()) throw ConfigError("sweep.omegas must be an array");
      for (const auto &v : j["omegas"]) c.omegas.push_back(Number(v, "sweep.omegas"));
    }
  }
  if (doc.contains("singular")) ParseSingular(doc["singular"], c.singular);
  if (doc.contains("pencil")) ParsePencil(doc["pencil"], c.pencil);
  if (doc.contains("seed"))
  {
    const json &s = doc["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
    {
      throw ConfigError("seed must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.medium.Validate();
  c.incident.Validate();
  return c;
}

RunConfig LoadConfig(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw ConfigError("cannot open config " + path);
  }
  json doc;
  try
  {
    f >> doc;
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return ParseConfig(doc);
}

void ApplyOverrides(RunConfig &config, const Overrides &o)
{
  if (o.xi) config.solver.xi = *o.xi;
  if (o.omega)
  {
    config.medium.omega = *o.omega;
    config.medium.Validate();
  }
  if (o.order)
  {
    config.geometry.n_polar = *o.order;
    config.geometry.n_azimuthal = 0;
  }
}

cplx ParseComplexFlag(const std::string &text)
{
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re))
  {
    throw ConfigError("cannot parse complex value \"" + text + "\"");
  }
  if (in >> comma)
  {
    if (comma != ',' || !(in >> im))
    {
      throw ConfigError("complex flags take the form re or re,im (got \"" + text + "\")");
    }
  }
  std::string rest;
  if (in >> rest)
  {
    throw ConfigError("trailing characters in \"" + text + "\"");
  }
  return {re, im};
}

json ComplexJson(cplx z)
{
  return json::array({z.real(), z.imag()});
}

}  // namespace maxsie::cli
