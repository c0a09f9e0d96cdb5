#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "maxsie/errors.hpp"

namespace maxsie::cli
{

std::string FormatNumber(double x)
{
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void WriteTraceCsv(std::ostream &out, const SurfaceGrid &grid, const TraceField &t)
{
  out << "node,x,y,z";
  for (const char *f : {"e", "h"})
  {
    for (const char *c : {"x", "y", "z"})
    {
      out << ',' << f << '_' << c << "_re," << f << '_' << c << "_im";
    }
  }
  out << '\n';
  for (int i = 0; i < grid.Size(); i++)
  {
    const Vec3 &p = grid.Nodes()[i];
    out << i << ',' << FormatNumber(p[0]) << ',' << FormatNumber(p[1]) << ',' << FormatNumber(p[2]);
    for (const CVec3 *v : {&t.e[i], &t.h[i]})
    {
      for (int c = 0; c < 3; c++)
      {
        out << ',' << FormatNumber((*v)[c].real()) << ',' << FormatNumber((*v)[c].imag());
      }
    }
    out << '\n';
  }
}

void WriteSweepCsv(std::ostream &out, const std::vector<SweepRow> &rows)
{
  out << "omega,xi,sigma_min,sigma_max,cond,constraint_r1,constraint_r2,status,j_norm,xi_imag\n";
  for (const SweepRow &r : rows)
  {
    std::string status = r.status;
    for (char &ch : status)
    {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << FormatNumber(r.omega) << ',' << FormatNumber(r.xi.real()) << ',' << FormatNumber(r.sigma_min) << ','
        << FormatNumber(r.sigma_max) << ',' << FormatNumber(r.cond) << ',' << FormatNumber(r.constraint_r1) << ','
        << FormatNumber(r.constraint_r2) << ',' << status << ',' << FormatNumber(r.j_norm) << ','
        << FormatNumber(r.xi.imag()) << '\n';
  }
}

void Emit(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &write)
{
  if (path.empty())
  {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f)
  {
    throw ConfigError("cannot open " + path + " for writing");
  }
  write(f);
}

void EmitJson(const std::string &path, std::ostream &fallback, const nlohmann::json &doc)
{
  Emit(path, fallback, [&](std::ostream &o) { o << doc.dump(2) << '\n'; });
}

}  // namespace maxsie::cli
