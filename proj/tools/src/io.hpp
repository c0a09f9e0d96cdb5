#ifndef MAXSIE_TOOLS_IO_HPP
#define MAXSIE_TOOLS_IO_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxsie/geom.hpp"
#include "maxsie/ops.hpp"
#include "maxsie/solve.hpp"

namespace maxsie::cli
{

inline constexpr int kReportVersion = 1;

// Shortest round-trip decimal form; "nan" / "inf" for non-finite values.
std::string FormatNumber(double x);

void WriteTraceCsv(std::ostream &out, const SurfaceGrid &grid, const TraceField &t);

// omega, xi, sigma_min, sigma_max, cond, constraint_r1, constraint_r2, status, j_norm, xi_imag
void WriteSweepCsv(std::ostream &out, const std::vector<SweepRow> &rows);

// Writes to the named file, or to fallback when the path is empty.
void Emit(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &write);
void EmitJson(const std::string &path, std::ostream &fallback, const nlohmann::json &doc);

}  // namespace maxsie::cli

#endif  // MAXSIE_TOOLS_IO_HPP
