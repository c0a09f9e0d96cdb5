#include <doctest.h>

#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "maxsie/errors.hpp"

using namespace maxsie;
using namespace maxsie::cli;
using nlohmann::json;

namespace
{

struct Run
{
  int code;
  std::string out, err;
};

Run Invoke(int (*cmd)(const RunConfig &, std::ostream &, std::ostream &), const json &doc)
{
  std::ostringstream out, err;
  const RunConfig config = ParseConfig(doc);
  const int code = RunGuarded([&]() { return cmd(config, out, err); }, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string &s)
{
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("config parsing: defaults, unknown keys, admissibility")
{
  const RunConfig d = ParseConfig(json::object());
  CHECK(d.solver.xi == cplx(1.0));
  CHECK(d.geometry.Build().NAzimuthal() == 2 * d.geometry.n_polar);

  CHECK_THROWS_AS(ParseConfig(json{{"geometry", {{"shape", "sphere"}, {"colour", 1}}}}), ConfigError);
  CHECK_THROWS_AS(ParseConfig(json{{"extra", 1}}), ConfigError);
  CHECK_THROWS_AS(ParseConfig(json{{"medium", {{"eps_minus", json::array({-2.0, 0.0})}}}}), ParameterError);
  CHECK_THROWS_AS(ParseConfig(json{{"medium", {{"eps_minus", json::array({2.0, -0.5})}}}}), ParameterError);
  CHECK_THROWS_AS(ParseConfig(json{{"medium", {{"mu_plus", 0.0}}}}), ParameterError);
  CHECK_THROWS_AS(ParseConfig(json{{"incident", {{"polarization", json::array({0.0, 0.0, 1.0})}}}}), InputError);
  CHECK_THROWS_AS(ParseConfig(json{{"solver", {{"oracle", "exact"}}}}), ConfigError);
  CHECK_THROWS_AS(ParseConfig(json{{"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(ParseConfig(json{{"seed", 1.5}}), ConfigError);
  CHECK(ParseConfig(json{{"seed", 42}}).seed == 42u);

  const RunConfig c = ParseConfig(json{{"medium", {{"eps_minus", json::array({2.0, 0.25})}}}, {"solver", {{"xi", json::array({0.0, 2.0})}}}});
  CHECK(c.medium.eps_minus == cplx(2.0, 0.25));
  CHECK(c.solver.xi == cplx(0.0, 2.0));
}

TEST_CASE("flag overrides and complex flag parsing")
{
  RunConfig c = ParseConfig(json::object());
  ApplyOverrides(c, Overrides{cplx(0.5, -1.0), 0.25, 9});
  CHECK(c.solver.xi == cplx(0.5, -1.0));
  CHECK(c.medium.omega == 0.25);
  CHECK(c.geometry.n_polar == 9);
  CHECK(ParseComplexFlag("1.5") == cplx(1.5));
  CHECK(ParseComplexFlag("1.5,-2") == cplx(1.5, -2.0));
  CHECK_THROWS_AS(ParseComplexFlag("1.5x"), ConfigError);
  CHECK_THROWS_AS(ParseComplexFlag("a,b"), ConfigError);
}

TEST_CASE("number formatting round-trips")
{
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300})
  {
    CHECK(std::stod(FormatNumber(x)) == x);
  }
  CHECK(FormatNumber(NAN) == "nan");
}

TEST_CASE("solve: identical media reproduce the incident trace")
{
  const json doc{{"geometry", {{"n_polar", 16}}},
                 {"medium", {{"eps_plus", 2.0}, {"eps_minus", 2.0}, {"mu_plus", 1.0}, {"mu_minus", 1.0}}}};
  const Run r = Invoke(CmdSolve, doc);
  REQUIRE(r.code == kExitOk);
  const json rep = json::parse(r.out);
  CHECK(rep["version"] == kReportVersion);
  CHECK(rep["status"] == "ok");
  CHECK(rep["incident_trace_error"].get<double>() <= 1e-10);
  CHECK(rep["xi"] == json::array({1.0, 0.0}));
}

TEST_CASE("solve: Mie oracle comparison and mismatch exit code")
{
  json doc{{"geometry", {{"n_polar", 10}}}, {"medium", {{"eps_minus", 2.0}}}, {"solver", {{"oracle", "mie"}}}};
  Run r = Invoke(CmdSolve, doc);
  REQUIRE(r.code == kExitOk);
  json rep = json::parse(r.out);
  CHECK(rep["oracle"]["relative_error"].get<double>() <= 1e-4);
  CHECK(rep["oracle"]["pass"] == true);

  doc["solver"]["tolerance"] = 1e-30;
  r = Invoke(CmdSolve, doc);
  CHECK(r.code == kExitOracleMismatch);
}

TEST_CASE("solve: singular parameters with xi = 0 exit with code 2")
{
  const MediumParams m = MediumParams::FromWaveNumbers(1.0, 6.0, 0.76345236818029, 1.83536815862844);
  const json doc{{"geometry", {{"n_polar", 16}}},
                 {"medium", {{"eps_plus", 1.0}, {"eps_minus", 6.0}, {"mu_plus", 1.0}, {"mu_minus", m.mu_minus}, {"omega", m.omega}}},
                 {"solver", {{"xi", 0.0}}}};
  const Run r = Invoke(CmdSolve, doc);
  CHECK(r.code == kExitNearSingular);
  const json rep = json::parse(r.out);
  CHECK(rep["status"] == "near_singular");
  CHECK(rep["sigma_min"].get<double>() <= 1e-4);
}

TEST_CASE("sweep: schema, monotone J column, empty list")
{
  const json doc{{"geometry", {{"n_polar", 5}}}, {"sweep", {{"omegas", {1e-1, 1e-2, 1e-3}}}}};
  const Run r = Invoke(CmdSweep, doc);
  REQUIRE(r.code == kExitOk);
  const auto lines = Lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "omega,xi,sigma_min,sigma_max,cond,constraint_r1,constraint_r2,status,j_norm,xi_imag");
  double previous = INFINITY;
  for (size_t i = 1; i < lines.size(); i++)
  {
    std::vector<std::string> cols;
    std::stringstream ss(lines[i]);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 10);
    CHECK(cols[7] == "ok");
    const double j = std::stod(cols[8]);
    CHECK(j < previous);
    previous = j;
  }
  const Run empty = Invoke(CmdSweep, json{{"geometry", {{"n_polar", 5}}}});
  CHECK(empty.code == kExitInputError);
}

TEST_CASE("singular-find: default guess, bad guess, scan")
{
  Run r = Invoke(CmdSingularFind, json::object());
  REQUIRE(r.code == kExitOk);
  json doc = json::parse(r.out);
  REQUIRE(doc["pairs"].size() == 1);
  CHECK(static_cast<long long>(std::floor(doc["pairs"][0]["k_plus"].get<double>() * 1e11)) == 76345236818LL);
  CHECK(static_cast<long long>(std::floor(doc["pairs"][0]["k_minus"].get<double>() * 1e11)) == 183536815862LL);

  r = Invoke(CmdSingularFind, json{{"singular", {{"guess", {4.0, 0.3}}, {"max_iterations", 2}}}});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("iterate,k_plus,k_minus,abs_residual") != std::string::npos);

  r = Invoke(CmdSingularFind, json{{"singular", {{"scan", true}, {"cells", 80}}}});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["pairs"].size() >= 2);
}

TEST_CASE("pencil commands")
{
  Run r = Invoke(CmdPencil, json{{"pencil", {{"kind", "example3x3"}}}});
  REQUIRE(r.code == kExitOk);
  auto lines = Lines(r.out);
  CHECK(lines[0] == "xi_re,xi_im,sigma_min,null_residual");
  for (size_t i = 1; i < lines.size(); i++)
  {
    const std::string s = lines[i].substr(0, lines[i].rfind(','));
    CHECK(std::stod(s.substr(s.rfind(',') + 1)) <= 1e-12);
  }

  r = Invoke(CmdPencil, json{{"pencil", {{"kind", "counterexample"}, {"truncations", {8, 20}}}}});
  REQUIRE(r.code == kExitOk);
  CHECK(Lines(r.out).size() == 1 + 2 * 3);

  r = Invoke(CmdPencil, json{{"pencil", {{"kind", "coercive"}, {"n", 16}}}});
  REQUIRE(r.code == kExitOk);
  CHECK(Lines(r.out)[0] == "xi,sigma_min,coercivity_margin,sampled_margin,inverse_norm");

  r = Invoke(CmdPencil, json{{"pencil", {{"kind", "invariant"}, {"n", 16}, {"n_null", 4}}}});
  CHECK(r.code == kExitOk);
}

TEST_CASE("outputs are deterministic for a fixed config and seed")
{
  const json doc{{"pencil", {{"kind", "coercive"}, {"n", 12}}}, {"seed", 42}};
  CHECK(Invoke(CmdPencil, doc).out == Invoke(CmdPencil, doc).out);
  const json s{{"geometry", {{"n_polar", 5}}}, {"sweep", {{"omegas", {0.5, 0.05}}}}};
  CHECK(Invoke(CmdSweep, s).out == Invoke(CmdSweep, s).out);
}
