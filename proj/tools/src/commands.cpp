#include "commands.hpp"

#include <cmath>

#include "io.hpp"
#include "maxsie/analytic.hpp"
#include "maxsie/errors.hpp"
#include "maxsie/pencil.hpp"

namespace maxsie::cli
{

using nlohmann::json;

namespace
{

// Above this many unknowns the solve factors in place and re-streams the residual.
constexpr int kLeanSolveDofs = 8000;

json Num(double x)
{
  return std::isfinite(x) ? json(x) : json(FormatNumber(x));
}

json VecJson(const Vec3 &v)
{
  return json::array({v[0], v[1], v[2]});
}

json GridJson(const SurfaceGrid &grid)
{
  return {{"shape", grid.IsSphere() ? "sphere" : "ellipsoid"},
          {"semi_axes", VecJson(grid.Shape().semi_axes)},
          {"n_polar", grid.NPolar()},
          {"n_azimuthal", grid.NAzimuthal()},
          {"nodes", grid.Size()},
          {"dofs", 6 * grid.Size()}};
}

json MediumJson(const MediumParams &m)
{
  return {{"eps_plus", m.eps_plus},     {"eps_minus", ComplexJson(m.eps_minus)}, {"mu_plus", m.mu_plus},
          {"mu_minus", m.mu_minus},     {"omega", m.omega},                     {"k_plus", ComplexJson(m.KPlus())},
          {"k_minus", ComplexJson(m.KMinus())}};
}

json PairJson(const SingularPair &p)
{
  return {{"eps_plus", p.eps_plus},   {"eps_minus", p.eps_minus}, {"k_plus", p.k_plus},
          {"k_minus", p.k_minus},     {"residual", ComplexJson(p.residual)}, {"iterations", p.iterations}};
}

std::vector<cplx> DefaultXis(const std::string &kind)
{
  if (kind == "example3x3")
  {
    return {0.0, 1.0, -1.0, I, -I, 10.0, 10.0 * I};
  }
  if (kind == "counterexample")
  {
    return {1.0, I, 3.0};
  }
  std::vector<cplx> xs;
  for (int i = 0; i <= 80; i++)
  {
    xs.push_back(-10.0 + 0.25 * i);
  }
  return xs;
}

}  // namespace

int CmdSolve(const RunConfig &config, std::ostream &out, std::ostream &err)
{
  const SurfaceGrid grid = config.geometry.Build();
  const MediumParams &medium = config.medium;
  const cplx xi = config.solver.xi;
  const IncidentField inc = IncidentPlaneWave(grid, medium, config.incident.direction, config.incident.polarization);

  json report{{"version", kReportVersion},
              {"command", "solve"},
              {"grid", GridJson(grid)},
              {"medium", MediumJson(medium)},
              {"incident",
               {{"direction", VecJson(config.incident.direction)},
                {"polarization", VecJson(config.incident.polarization)}}},
              {"xi", ComplexJson(xi)}};

  SolveReport rep;
  try
  {
    if (6 * grid.Size() <= kLeanSolveDofs)
    {
      rep = Solve(AssembleBlockSystem(grid, medium, xi), inc);
    }
    else
    {
      rep = SolveLean(grid, medium, xi, inc);
    }
  }
  catch (const NearSingularSystemError &e)
  {
    report["status"] = "near_singular";
    report["sigma_min"] = Num(e.SigmaMin());
    report["sigma_max"] = Num(e.SigmaMax());
    report["condition_estimate"] = Num(e.SigmaMax() / e.SigmaMin());
    EmitJson(config.output.report, out, report);
    err << "near-singular system: " << e.what() << '\n';
    return kExitNearSingular;
  }

  report["status"] = "ok";
  report["residual_norm"] = Num(rep.residual_norm);
  report["constraint_norms"] = {{"r1", Num(rep.constraint_norms.first)}, {"r2", Num(rep.constraint_norms.second)}};
  report["sigma_min"] = Num(rep.smallest_singular_value);
  report["sigma_max"] = Num(rep.largest_singular_value);
  report["condition_estimate"] = Num(rep.condition_estimate);
  report["incident_trace_error"] = Num(RelativeTraceError(grid, rep.trace, TraceField{inc.e_inc, inc.h_inc}));

  int code = kExitOk;
  if (config.solver.oracle == "mie")
  {
    if (!grid.IsSphere())
    {
      throw ConfigError("the Mie oracle needs a sphere geometry");
    }
    const double ka = std::abs(medium.KPlus()) * grid.Shape().Radius();
    const int degree = config.solver.mie_degree > 0 ? config.solver.mie_degree : static_cast<int>(std::ceil(ka)) + 20;
    const TraceField ref = MieTraces(grid, medium, config.incident, degree);
    const double e = RelativeTraceError(grid, rep.trace, ref);
    const bool pass = e <= config.solver.tolerance;
    report["oracle"] = {{"kind", "mie"},
                        {"max_degree", degree},
                        {"relative_error", Num(e)},
                        {"tolerance", config.solver.tolerance},
                        {"pass", pass}};
    if (!pass)
    {
      err << "Mie oracle mismatch: relative error " << e << " exceeds " << config.solver.tolerance << '\n';
      code = kExitOracleMismatch;
    }
  }
  EmitJson(config.output.report, out, report);
  if (!config.output.traces.empty())
  {
    Emit(config.output.traces, out, [&](std::ostream &o) { WriteTraceCsv(o, grid, rep.trace); });
  }
  return code;
}

int CmdSweep(const RunConfig &config, std::ostream &out, std::ostream &err)
{
  const SurfaceGrid grid = config.geometry.Build();
  const std::vector<SweepRow> rows =
      FrequencySweep(grid, config.medium, config.omegas, ConstantXi(config.solver.xi), config.incident);
  for (const SweepRow &r : rows)
  {
    if (r.status != "ok")
    {
      err << "omega " << r.omega << ": " << r.status << '\n';
    }
  }
  Emit(config.output.csv, out, [&](std::ostream &o) { WriteSweepCsv(o, rows); });
  return kExitOk;
}

int CmdSingularFind(const RunConfig &config, std::ostream &out, std::ostream &err)
{
  const SingularConfig &s = config.singular;
  json doc{{"version", kReportVersion}, {"command", "singular-find"}};
  json pairs = json::array();
  if (s.scan)
  {
    for (const SingularPair &p : ScanSingularPairs(s.eps_plus, s.eps_minus, s.k_plus_range, s.k_minus_range, s.cells))
    {
      pairs.push_back(PairJson(p));
    }
  }
  else
  {
    try
    {
      pairs.push_back(PairJson(FindSingularPair(s.eps_plus, s.eps_minus, s.guess[0], s.guess[1], s.max_iterations)));
    }
    catch (const RootNotFoundError &e)
    {
      err << e.what() << "\niterate,k_plus,k_minus,abs_residual\n";
      for (size_t i = 0; i < e.Trace().size(); i++)
      {
        const auto &t = e.Trace()[i];
        err << i << ',' << FormatNumber(t.k_plus) << ',' << FormatNumber(t.k_minus) << ','
            << FormatNumber(t.residual) << '\n';
      }
      return kExitInputError;
    }
  }
  doc["pairs"] = pairs;
  EmitJson(config.output.report, out, doc);
  return kExitOk;
}

int CmdPencil(const RunConfig &config, std::ostream &out, std::ostream &err)
{
  const PencilConfig &p = config.pencil;
  const std::vector<cplx> xis = p.xis.empty() ? DefaultXis(p.kind) : p.xis;
  json summary{{"version", kReportVersion}, {"command", "pencil"}, {"kind", p.kind}};
  std::function<void(std::ostream &)> table;

  if (p.kind == "example3x3")
  {
    const PencilInstance inst = Example3x3();
    table = [&, inst](std::ostream &o) {
      o << "xi_re,xi_im,sigma_min,null_residual\n";
      for (const cplx &xi : xis)
      {
        const CVector v = Example3x3NullVector(xi);
        const double res = (inst.Operator(xi) * v).norm() / v.norm();
        o << FormatNumber(xi.real()) << ',' << FormatNumber(xi.imag()) << ',' << FormatNumber(PencilSigmaMin(inst, xi))
          << ',' << FormatNumber(res) << '\n';
      }
    };
  }
  else if (p.kind == "counterexample")
  {
    table = [&](std::ostream &o) {
      o << "m,xi_re,xi_im,residual,tail_bound,u_norm,j_sigma_min\n";
      for (int m : p.truncations)
      {
        for (const cplx &xi : xis)
        {
          const CounterexampleResult r = InjectiveCounterexample(xi, m);
          o << m << ',' << FormatNumber(xi.real()) << ',' << FormatNumber(xi.imag()) << ',' << FormatNumber(r.residual)
            << ',' << FormatNumber(r.tail_bound) << ',' << FormatNumber(r.u_norm) << ','
            << FormatNumber(r.j_sigma_min) << '\n';
        }
      }
    };
  }
  else if (p.kind == "coercive")
  {
    const PencilInstance inst = RandomCoerciveInstance(p.n, config.seed);
    const double xi0 = inst.CoerciveThreshold();
    std::vector<double> grid;
    if (p.xis.empty())
    {
      for (double f : {0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0})
      {
        grid.push_back(f * xi0);
      }
    }
    else
    {
      for (const cplx &x : p.xis) grid.push_back(x.real());
    }
    std::vector<CoercivityMargin> margins;
    std::optional<double> crossing;
    for (double xi : grid)
    {
      margins.push_back(ComputeCoercivityMargin(inst, xi, p.samples, config.seed));
      if (!crossing && margins.back().exact >= 0.5)
      {
        crossing = xi;
      }
    }
    summary["xi0"] = xi0;
    summary["norm_m"] = inst.NormM();
    summary["lambda_min_j"] = inst.LambdaMinJ();
    summary["first_xi_with_margin_half"] = crossing ? json(*crossing) : json(nullptr);
    err << "xi0 = ||M||^2 / lambda_min(J) = " << xi0 << '\n';
    table = [&, inst, grid, margins](std::ostream &o) {
      o << "xi,sigma_min,coercivity_margin,sampled_margin,inverse_norm\n";
      for (size_t i = 0; i < grid.size(); i++)
      {
        const double s = PencilSigmaMin(inst, grid[i]);
        o << FormatNumber(grid[i]) << ',' << FormatNumber(s) << ',' << FormatNumber(margins[i].exact) << ','
          << FormatNumber(margins[i].sampled) << ',' << FormatNumber(1.0 / s) << '\n';
      }
    };
  }
  else
  {
    const PencilInstance inst = InvariantBlockInstance(p.n, p.n_null, config.seed);
    std::vector<double> grid;
    for (const cplx &x : xis) grid.push_back(x.real());
    const NullspaceScan scan = InvariantNullspaceScan(inst, grid, true);
    summary["xi_threshold_empirical"] = scan.xi_threshold ? json(*scan.xi_threshold) : json(nullptr);
    summary["singular_xis"] = scan.singular_xis;
    summary["singular_everywhere"] = scan.singular_everywhere;
    table = [scan](std::ostream &o) {
      o << "xi,sigma_min\n";
      for (size_t i = 0; i < scan.xis.size(); i++)
      {
        o << FormatNumber(scan.xis[i]) << ',' << FormatNumber(scan.sigma_min[i]) << '\n';
      }
    };
  }
  Emit(config.output.csv, out, table);
  if (!config.output.report.empty())
  {
    EmitJson(config.output.report, out, summary);
  }
  return kExitOk;
}

int RunGuarded(const std::function<int()> &body, std::ostream &err)
{
  try
  {
    return body();
  }
  catch (const NearSingularSystemError &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitNearSingular;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  catch (const nlohmann::json::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace maxsie::cli
