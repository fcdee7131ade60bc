#include "anosov/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anosov/version.hpp"

namespace anosov {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Next content line, skipping blanks and comments. Returns false at EOF.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!is_blank_or_comment(line)) return true;
  }
  return false;
}

Matrix read_matrix_block(std::istream& in, const std::string& dim_line) {
  int d = 0;
  {
    std::istringstream hs(dim_line);
    if (!(hs >> d) || d < 1) throw ParseError("expected a matrix dimension line, got: " + dim_line);
    std::string extra;
    if (hs >> extra) throw ParseError("junk after matrix dimension: " + dim_line);
  }
  Matrix m(d, d);
  std::string line;
  for (int i = 0; i < d; ++i) {
    if (!next_content_line(in, line)) throw ParseError("unexpected end of file inside a matrix block");
    std::istringstream ls(line);
    for (int j = 0; j < d; ++j) {
      if (!(ls >> m(i, j))) throw ParseError("bad matrix row: " + line);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("too many entries in matrix row: " + line);
  }
  if (!m.is_finite()) throw NonFinite("matrix file contains non-finite entries");
  return m;
}

}  // namespace

std::vector<Matrix> read_matrices(std::istream& in) {
  std::vector<Matrix> out;
  std::string line;
  while (next_content_line(in, line)) {
    out.push_back(read_matrix_block(in, line));
  }
  if (out.empty()) throw ParseError("no matrices in input");
  return out;
}

std::vector<Matrix> read_matrices_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_matrices(in);
}

Representation read_representation(std::istream& in, const Tolerances& tol) {
  std::vector<std::pair<std::string, Matrix>> gens;
  std::string line;
  while (next_content_line(in, line)) {
    std::istringstream ls(line);
    std::string keyword, name;
    if (!(ls >> keyword) || keyword != "gen" || !(ls >> name)) {
      throw ParseError("expected `gen <Name>` header, got: " + line);
    }
    if (!next_content_line(in, line)) throw ParseError("missing matrix after `gen " + name + "`");
    gens.emplace_back(name, read_matrix_block(in, line));
  }
  if (gens.empty()) throw ParseError("no generators in representation file");
  return Representation::make(std::move(gens), tol);
}

Representation read_representation_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_representation(in, tol);
}

void write_matrix(std::ostream& out, const Matrix& m, int precision) {
  out << m.rows() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << fmt_double(m(i, j), precision);
    }
    out << "\n";
  }
}

void write_flag(std::ostream& out, const Flag& f, int precision) {
  out << "pivots:";
  for (int p : f.face.pivots) out << " " << p;
  out << "\n";
  write_matrix(out, f.frame, precision);
}

Flag read_flag(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("missing pivots header");
  std::istringstream ls(line);
  std::string keyword;
  if (!(ls >> keyword) || keyword != "pivots:") throw ParseError("expected `pivots: ...`, got: " + line);
  std::vector<int> pivots;
  int p = 0;
  while (ls >> p) pivots.push_back(p);
  if (!next_content_line(in, line)) throw ParseError("missing flag frame");
  Matrix frame = read_matrix_block(in, line);
  FaceType face(frame.rows(), std::move(pivots));
  return make_flag(face, frame);
}

std::string fmt_double(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  // Normalize the rare "-0" so reruns are byte-identical across platforms.
  if (std::string(buf) == "-0") return "0";
  return buf;
}

void write_header(std::ostream& out, const std::string& config_line) {
  out << "# anosov " << kVersion << "\n";
  out << "# config: " << config_line << "\n";
}

void write_report(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& keyvals) {
  for (const auto& [k, v] : keyvals) out << k << "=" << v << "\n";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ",";
    out << cells[i];
  }
  out << "\n";
}

void write_svg_scatter(std::ostream& out, const std::vector<SvgGroup>& groups, int size_px) {
  double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
  for (const SvgGroup& g : groups) {
    for (const auto& [x, y] : g.points) {
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double pad = 0.05 * span;
  auto sx = [&](double x) { return (x - lo_x + pad) / (span + 2 * pad) * size_px; };
  auto sy = [&](double y) { return size_px - (y - lo_y + pad) / (span + 2 * pad) * size_px; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const SvgGroup& g : groups) {
    for (const auto& [x, y] : g.points) {
      out << "<circle cx=\"" << fmt_double(sx(x), 5) << "\" cy=\"" << fmt_double(sy(y), 5)
          << "\" r=\"2\" fill=\"" << g.color << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace anosov
