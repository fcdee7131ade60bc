#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "anosov/flag.hpp"
#include "anosov/matrix.hpp"
#include "anosov/rep.hpp"

namespace anosov {

// Matrix text format, shared across the whole toolkit:
//   first line `d`, then d lines of d decimal floats; `#` starts a comment
//   line; blank lines separate matrices. Representation files prefix each
//   matrix with a `gen <Name>` line.

std::vector<Matrix> read_matrices(std::istream& in);
std::vector<Matrix> read_matrices_file(const std::string& path);

Representation read_representation(std::istream& in, const Tolerances& tol = {});
Representation read_representation_file(const std::string& path, const Tolerances& tol = {});

void write_matrix(std::ostream& out, const Matrix& m, int precision = 17);

// Flags serialize as the matrix format plus a `pivots: i1 i2 ...` header.
void write_flag(std::ostream& out, const Flag& f, int precision = 17);
Flag read_flag(std::istream& in);

// %.{precision}g formatting; the default 6 significant digits keep output
// files byte-stable across platforms.
std::string fmt_double(double x, int precision = 6);

// `# <tool> <version>` and `# config: ...` header lines; identical configs
// must produce identical headers.
void write_header(std::ostream& out, const std::string& config_line);

void write_report(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& keyvals);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

// Minimal SVG scatter plot; one circle per point, one fill color per group.
struct SvgGroup {
  std::string color;
  std::vector<std::pair<double, double>> points;
};
void write_svg_scatter(std::ostream& out, const std::vector<SvgGroup>& groups, int size_px = 480);

}  // namespace anosov
