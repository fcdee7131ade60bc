#include "anosov/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anosov/cartan.hpp"
#include "anosov/domains.hpp"
#include "anosov/io.hpp"
#include "anosov/limits.hpp"
#include "anosov/schottky.hpp"
#include "anosov/version.hpp"

namespace anosov {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCertFail = 2;

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += " ";
    s += args[i];
  }
  return s;
}

std::vector<int> parse_pivot_list(const std::string& csv) {
  std::vector<int> pivots;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    pivots.push_back(std::stoi(token));
  }
  return pivots;
}

FaceType face_from_option(int d, const std::string& pivots_csv) {
  if (pivots_csv.empty()) return FaceType::full(d);
  return FaceType(d, parse_pivot_list(pivots_csv));
}

Matrix rotation_in_plane(int d, double theta) {
  Matrix r = Matrix::identity(d);
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> xs;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    xs.push_back(std::stod(token));
  }
  return xs;
}

struct ToolOptions {
  int precision = 6;
  std::string out_dir = ".";
  int threads = 1;
  long budget = 5'000'000;
  Tolerances tol;
  std::string config;  // verbatim command line, echoed into outputs
};

void add_shared_flags(CLI::App* cmd, ToolOptions& opts) {
  cmd->add_option("--precision", opts.precision, "Significant digits in numeric output");
  cmd->add_option("--out", opts.out_dir, "Output directory for artifact files");
  cmd->add_option("--threads", opts.threads, "Worker threads for ball enumeration");
  cmd->add_option("--budget", opts.budget, "Evaluation budget for word balls");
  cmd->add_option("--svd-tol", opts.tol.svd_tol, "Override svd_tol");
  cmd->add_option("--det-tol", opts.tol.det_tol, "Override det_tol");
  cmd->add_option("--sum-tol", opts.tol.sum_tol, "Override sum_tol");
  cmd->add_option("--recompose-tol", opts.tol.recompose_tol, "Override recompose_tol");
  cmd->add_option("--rank-tol", opts.tol.rank_tol, "Override rank_tol");
  cmd->add_option("--angle-tol", opts.tol.angle_tol, "Override angle_tol");
}

std::ofstream open_artifact(const ToolOptions& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  const std::string path = opts.out_dir + "/" + name;
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file: " + path);
  write_header(f, opts.config);
  return f;
}

std::string word_text(const Word& w, const Representation& rho) { return word_str(w, rho.names()); }

void write_certificate_files(const ToolOptions& opts, const URUCertificate& cert, const Representation& rho,
                             const std::string& stem) {
  const int p = opts.precision;
  std::ofstream report = open_artifact(opts, stem + ".txt");
  write_report(report, {
                           {"pass", cert.pass ? "true" : "false"},
                           {"face", cert.face.str()},
                           {"radius", std::to_string(cert.L)},
                           {"min_slope", fmt_double(cert.min_slope, p)},
                           {"c", fmt_double(cert.c, p)},
                           {"a", fmt_double(cert.a, p)},
                           {"c_qi", fmt_double(cert.c_qi, p)},
                           {"a_qi", fmt_double(cert.a_qi, p)},
                           {"margin", fmt_double(cert.margin, p)},
                           {"tail_ok", cert.tail_ok ? "true" : "false"},
                       });

  std::ofstream csv = open_artifact(opts, stem + "_gaps.csv");
  write_csv_row(csv, {"len", "min_gap", "min_norm", "words", "argmin_gap_word", "argmin_norm_word"});
  for (const GapRecord& rec : cert.profile.per_length) {
    write_csv_row(csv, {std::to_string(rec.len), fmt_double(rec.min_gap, p), fmt_double(rec.min_norm, p),
                        std::to_string(rec.words), word_text(rec.argmin_gap, rho), word_text(rec.argmin_norm, rho)});
  }
}

// Sign-normalized coordinates of a frame column for plotting.
std::pair<double, double> column_coords(const Matrix& frame, int col) {
  int lead = 0;
  for (int i = 0; i < frame.rows(); ++i) {
    if (std::abs(frame(i, col)) > std::abs(frame(lead, col))) lead = i;
  }
  const double sign = frame(lead, col) >= 0.0 ? 1.0 : -1.0;
  return {sign * frame(0, col), sign * frame(1, col)};
}

int cmd_cartan(const ToolOptions& opts, const std::string& path, std::ostream& out) {
  for (const Matrix& m : read_matrices_file(path)) {
    const CartanVector v = cartan_projection(m, opts.tol);
    for (int i = 0; i < v.dim(); ++i) {
      if (i) out << " ";
      out << fmt_double(v.components[i], opts.precision);
    }
    out << "\n";
  }
  return kExitOk;
}

int cmd_weyl_thickenings(const ToolOptions& opts, int d, const std::string& pivots_csv, std::ostream& out) {
  const FaceType face = face_from_option(d, pivots_csv);
  const std::vector<Thickening> balanced = enumerate_balanced(d, face);
  for (const Thickening& t : balanced) {
    const std::vector<Perm> ms = t.members_by_length();
    for (size_t i = 0; i < ms.size(); ++i) {
      if (i) out << "|";
      out << ms[i].one_line();
    }
    out << "\n";
  }
  out << "count=" << balanced.size() << "\n";
  (void)opts;
  return kExitOk;
}

int cmd_certify(const ToolOptions& opts, const std::string& rep_path, const std::string& pivots_csv, int radius,
                double min_slope, std::ostream& out) {
  const Representation rho = read_representation_file(rep_path, opts.tol);
  const FaceType face = face_from_option(rho.dim(), pivots_csv);
  EnumOptions eopts;
  eopts.budget = opts.budget;
  eopts.threads = opts.threads;
  const URUCertificate cert = certify_uru(rho, face, radius, min_slope, eopts);
  write_certificate_files(opts, cert, rho, "certificate");
  out << "pass=" << (cert.pass ? "true" : "false") << " c=" << fmt_double(cert.c, opts.precision)
      << " c_qi=" << fmt_double(cert.c_qi, opts.precision) << " margin=" << fmt_double(cert.margin, opts.precision)
      << "\n";
  return cert.pass ? kExitOk : kExitCertFail;
}

int cmd_limitset(const ToolOptions& opts, const std::string& rep_path, const std::string& pivots_csv, int word_len,
                 int power, int radius, double min_slope, const std::string& svg_path, std::ostream& out) {
  const Representation rho = read_representation_file(rep_path, opts.tol);
  const FaceType face = face_from_option(rho.dim(), pivots_csv);
  EnumOptions eopts;
  eopts.budget = opts.budget;
  eopts.threads = opts.threads;
  const URUCertificate cert = certify_uru(rho, face, radius, min_slope, eopts);
  const LimitSample sample = limit_set_sample(rho, face, word_len, power, &cert);

  const int p = opts.precision;
  std::ofstream csv = open_artifact(opts, "limitset.csv");
  std::vector<std::string> header{"word"};
  const int span = face.pivots.back();
  for (int c = 0; c < span; ++c)
    for (int r = 0; r < face.d; ++r) header.push_back("f" + std::to_string(r) + std::to_string(c));
  write_csv_row(csv, header);
  for (const LimitPoint& pt : sample.points) {
    std::vector<std::string> row{word_text(pt.word, rho)};
    for (int c = 0; c < span; ++c)
      for (int r = 0; r < face.d; ++r) row.push_back(fmt_double(pt.flag.frame(r, c), p));
    write_csv_row(csv, row);
  }

  if (!svg_path.empty()) {
    if (face.d != 3 || !face.is_full()) throw Error("--svg needs d = 3 full flags");
    SvgGroup points{"#1f77b4", {}};
    SvgGroup lines{"#ff7f0e", {}};
    for (const LimitPoint& pt : sample.points) {
      points.points.push_back(column_coords(pt.flag.frame, 0));
      lines.points.push_back(column_coords(pt.flag.frame, 2));
    }
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream svg(opts.out_dir + "/" + svg_path);
    if (!svg) throw Error("cannot open svg output");
    write_svg_scatter(svg, {points, lines});
  }

  out << "points=" << sample.points.size() << " skipped=" << sample.skipped_words
      << " merged=" << sample.merged_duplicates << " min_margin="
      << fmt_double(sample.points.size() >= 2 ? sample.min_pairwise_margin : 0.0, p)
      << " certified=" << (sample.certified ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_schottky_search(const ToolOptions& opts, const std::string& eigs_csv, const std::string& eigs_b_csv,
                        double conj_angle, const std::string& pivots_csv, int radius, double min_slope, long cap,
                        double mult, long m_fixed, long n_fixed, std::ostream& out) {
  const std::vector<double> eigs_a = parse_double_list(eigs_csv);
  const std::vector<double> eigs_b = eigs_b_csv.empty() ? eigs_a : parse_double_list(eigs_b_csv);
  const int d = static_cast<int>(eigs_a.size());
  const FaceType face = face_from_option(d, pivots_csv);
  const AxialPair pair =
      AxialPair::make(eigs_a, Matrix::identity(d), eigs_b, rotation_in_plane(d, conj_angle), face, opts.tol);

  const GenericityResult gen = genericity_check(pair, opts.tol);
  out << "generic=" << (gen.generic ? "true" : "false") << " margin=" << fmt_double(gen.margin, opts.precision)
      << "\n";
  if (!gen.generic) return kExitCertFail;

  EnumOptions eopts;
  eopts.budget = opts.budget;
  eopts.threads = opts.threads;
  PingPongOptions pp_opts;
  pp_opts.radius_multiplier = mult;

  auto write_pingpong = [&](const PingPongCertificate& pp) {
    std::ofstream report = open_artifact(opts, "pingpong.txt");
    write_report(report, {
                             {"pass", pp.pass ? "true" : "false"},
                             {"radius", fmt_double(pp.radius, opts.precision)},
                             {"min_center_distance", fmt_double(pp.min_center_distance, opts.precision)},
                             {"margin_A", fmt_double(pp.margins[0], opts.precision)},
                             {"margin_Ainv", fmt_double(pp.margins[1], opts.precision)},
                             {"margin_B", fmt_double(pp.margins[2], opts.precision)},
                             {"margin_Binv", fmt_double(pp.margins[3], opts.precision)},
                             {"samples_per_letter", std::to_string(pp.samples_per_letter)},
                         });
  };

  if (m_fixed > 0 || n_fixed > 0) {
    const long m = std::max<long>(m_fixed, 1);
    const long n = std::max<long>(n_fixed, 1);
    const PingPongCertificate pp = pingpong_certificate(pair, m, n, pp_opts, opts.tol);
    write_pingpong(pp);
    const Representation rho = schottky_rep(pair, m, n, opts.tol);
    const URUCertificate cert = certify_uru(rho, face, radius, min_slope, eopts);
    write_certificate_files(opts, cert, rho, "certificate");
    out << "m=" << m << " n=" << n << " pingpong=" << (pp.pass ? "pass" : "fail")
        << " uru=" << (cert.pass ? "pass" : "fail") << "\n";
    return (pp.pass && cert.pass) ? kExitOk : kExitCertFail;
  }

  try {
    const PowerSearchResult res = find_min_powers(pair, radius, min_slope, cap, pp_opts, eopts, opts.tol);
    write_pingpong(res.pingpong);
    write_certificate_files(opts, res.uru, schottky_rep(pair, res.power, res.power, opts.tol), "certificate");
    out << "threshold=" << res.power << "\n";
    return kExitOk;
  } catch (const CapExceeded&) {
    out << "threshold=none cap=" << cap << "\n";
    return kExitCertFail;
  }
}

int cmd_domain(const ToolOptions& opts, const std::string& rep_path, const std::string& pivots_csv,
               const std::string& thickening_spec, int samples, uint64_t seed, int word_len, int power, int radius,
               double min_slope, int census_len, double census_tol, std::ostream& out) {
  const Representation rho = read_representation_file(rep_path, opts.tol);
  const FaceType face = face_from_option(rho.dim(), pivots_csv);
  EnumOptions eopts;
  eopts.budget = opts.budget;
  eopts.threads = opts.threads;
  const URUCertificate cert = certify_uru(rho, face, radius, min_slope, eopts);
  LimitSample sample = limit_set_sample(rho, face, word_len, power, &cert);

  Thickening th = Thickening::empty(face.d);
  const bool is_index = !thickening_spec.empty() &&
                        std::all_of(thickening_spec.begin(), thickening_spec.end(),
                                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (is_index) {
    const std::vector<Thickening> balanced = enumerate_balanced(face.d, face);
    const size_t idx = std::stoul(thickening_spec);
    if (idx >= balanced.size()) throw Error("thickening index out of range");
    th = balanced[idx];
  } else {
    std::ifstream tf(thickening_spec);
    if (!tf) throw Error("cannot open thickening file: " + thickening_spec);
    std::vector<Perm> perms;
    std::string line;
    while (std::getline(tf, line)) {
      if (line.empty() || line[0] == '#') continue;
      perms.push_back(Perm::from_one_line(line, face.d));
    }
    th = Thickening::from_perms(face.d, perms);
  }

  const ThickenedLimitSet tls = ThickenedLimitSet::make(th, std::move(sample), opts.tol.rank_tol);
  const std::vector<ClassifiedChamber> cloud = domain_sample(tls, samples, seed);

  const int p = opts.precision;
  std::ofstream csv = open_artifact(opts, "domain.csv");
  std::vector<std::string> header{"index", "class", "witness", "coset"};
  for (int r = 0; r < face.d; ++r)
    for (int c = 0; c < face.d; ++c) header.push_back("f" + std::to_string(r) + std::to_string(c));
  write_csv_row(csv, header);
  long in_count = 0, out_count = 0, ambiguous_count = 0;
  for (size_t i = 0; i < cloud.size(); ++i) {
    const ClassifiedChamber& c = cloud[i];
    std::string cls = "out";
    if (c.cls == DomainClass::In) {
      cls = "in";
      ++in_count;
    } else if (c.cls == DomainClass::Ambiguous) {
      cls = "ambiguous";
      ++ambiguous_count;
    } else {
      ++out_count;
    }
    std::vector<std::string> row{std::to_string(i), cls,
                                 c.witness_index >= 0 ? word_text(tls.sample.points[c.witness_index].word, rho) : "-",
                                 c.witness_index >= 0 ? c.witness_coset.one_line() : "-"};
    for (int r = 0; r < face.d; ++r)
      for (int cc = 0; cc < face.d; ++cc) row.push_back(fmt_double(c.chamber.frame(r, cc), p));
    write_csv_row(csv, row);
  }

  if (census_len > 0) {
    std::vector<Flag> k_set;
    for (const ClassifiedChamber& c : cloud) {
      if (c.cls == DomainClass::Out && static_cast<int>(k_set.size()) < 40) k_set.push_back(c.chamber);
    }
    if (k_set.empty()) throw Error("census needs at least one chamber classified out");
    const std::vector<CensusEntry> census = properness_census(rho, k_set, census_len, census_tol, opts.budget);
    std::ofstream ccsv = open_artifact(opts, "census.csv");
    write_csv_row(ccsv, {"len", "returns", "words"});
    for (const CensusEntry& e : census) {
      std::string words;
      for (size_t i = 0; i < e.returns.size(); ++i) {
        if (i) words += " ";
        words += word_text(e.returns[i], rho);
      }
      write_csv_row(ccsv, {std::to_string(e.len), std::to_string(e.returns.size()), words});
    }
  }

  out << "in=" << in_count << " out=" << out_count << " ambiguous=" << ambiguous_count << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anosov subgroup toolkit for SL(d,R): Cartan projections, Weyl thickenings, "
               "URU certification, Schottky construction, limit sets and domains"};
  app.require_subcommand(1);

  ToolOptions opts;
  opts.config = join_args(args);

  // cartan
  std::string cartan_file;
  CLI::App* cartan_cmd = app.add_subcommand("cartan", "Cartan projection of matrices from a file");
  cartan_cmd->add_option("file", cartan_file, "Matrix text file")->required();
  add_shared_flags(cartan_cmd, opts);

  // weyl thickenings
  CLI::App* weyl_cmd = app.add_subcommand("weyl", "Weyl group combinatorics");
  weyl_cmd->require_subcommand(1);
  int weyl_d = 3;
  std::string weyl_pivots;
  CLI::App* thick_cmd = weyl_cmd->add_subcommand("thickenings", "Enumerate balanced thickenings");
  thick_cmd->add_option("--d", weyl_d, "Weyl group rank parameter d (W = S_d)")->required();
  thick_cmd->add_option("--pivots", weyl_pivots, "Face pivots, comma separated (default: full face)");
  add_shared_flags(thick_cmd, opts);

  // certify
  std::string certify_rep, certify_pivots;
  int certify_radius = 10;
  double certify_min_slope = 0.05;
  CLI::App* certify_cmd = app.add_subcommand("certify", "URU certification of a representation");
  certify_cmd->add_option("--rep", certify_rep, "Representation file (gen headers)")->required();
  certify_cmd->add_option("--pivots", certify_pivots, "Face pivots, comma separated (default: full face)");
  certify_cmd->add_option("--radius", certify_radius, "Word ball radius L");
  certify_cmd->add_option("--min-slope", certify_min_slope, "Required drift slope");
  add_shared_flags(certify_cmd, opts);

  // limitset
  std::string ls_rep, ls_pivots, ls_svg;
  int ls_word_len = 6, ls_power = 40, ls_radius = 8;
  double ls_min_slope = 0.05;
  CLI::App* limitset_cmd = app.add_subcommand("limitset", "Sample the limit set of a representation");
  limitset_cmd->add_option("--rep", ls_rep, "Representation file")->required();
  limitset_cmd->add_option("--pivots", ls_pivots, "Face pivots (default: full face)");
  limitset_cmd->add_option("--word-length", ls_word_len, "Cyclically reduced word length");
  limitset_cmd->add_option("--power", ls_power, "Power applied to each word");
  limitset_cmd->add_option("--radius", ls_radius, "Certification ball radius");
  limitset_cmd->add_option("--min-slope", ls_min_slope, "Certification slope threshold");
  limitset_cmd->add_option("--svg", ls_svg, "SVG scatter output name (d = 3 full flags)");
  add_shared_flags(limitset_cmd, opts);

  // schottky search
  CLI::App* schottky_cmd = app.add_subcommand("schottky", "Schottky pair pipelines");
  schottky_cmd->require_subcommand(1);
  std::string sk_eigs, sk_eigs_b, sk_pivots;
  double sk_angle = 0.7853981633974483;  // pi/4
  int sk_radius = 10;
  double sk_min_slope = 0.05, sk_mult = 0.8;
  long sk_cap = 64, sk_m = 0, sk_n = 0;
  CLI::App* search_cmd = schottky_cmd->add_subcommand("search", "Find the smallest certifying power");
  search_cmd->add_option("--eigs", sk_eigs, "Eigenvalues of alpha, descending, product 1")->required();
  search_cmd->add_option("--eigs-b", sk_eigs_b, "Eigenvalues of beta (default: same as alpha)");
  search_cmd->add_option("--conj-angle", sk_angle, "Rotation angle conjugating beta (radians)");
  search_cmd->add_option("--pivots", sk_pivots, "Face pivots (default: full face)");
  search_cmd->add_option("--radius", sk_radius, "Certification ball radius");
  search_cmd->add_option("--min-slope", sk_min_slope, "Certification slope threshold");
  search_cmd->add_option("--cap", sk_cap, "Largest power to try");
  search_cmd->add_option("--mult", sk_mult, "Ping-pong ball radius multiplier");
  search_cmd->add_option("--m", sk_m, "Fixed power for alpha (skips the search)");
  search_cmd->add_option("--n", sk_n, "Fixed power for beta (skips the search)");
  add_shared_flags(search_cmd, opts);

  // domain
  std::string dm_rep, dm_pivots, dm_thickening;
  int dm_samples = 1000, dm_word_len = 6, dm_power = 40, dm_radius = 8, dm_census = 0;
  double dm_min_slope = 0.05, dm_census_tol = 0.05;
  uint64_t dm_seed = 0x5EED;
  CLI::App* domain_cmd = app.add_subcommand("domain", "Classify chambers against a thickened limit set");
  domain_cmd->add_option("--rep", dm_rep, "Representation file")->required();
  domain_cmd->add_option("--pivots", dm_pivots, "Limit set face pivots (default: full face)");
  domain_cmd->add_option("--thickening", dm_thickening, "Balanced thickening index or file of permutations")
      ->required();
  domain_cmd->add_option("--samples", dm_samples, "Number of random chambers");
  domain_cmd->add_option("--seed", dm_seed, "Sampling seed");
  domain_cmd->add_option("--word-length", dm_word_len, "Limit sample word length");
  domain_cmd->add_option("--power", dm_power, "Limit sample power");
  domain_cmd->add_option("--radius", dm_radius, "Certification ball radius");
  domain_cmd->add_option("--min-slope", dm_min_slope, "Certification slope threshold");
  domain_cmd->add_option("--census", dm_census, "Properness census word length (0 = off)");
  domain_cmd->add_option("--census-tol", dm_census_tol, "Chamber meeting tolerance for the census");
  add_shared_flags(domain_cmd, opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*cartan_cmd) return cmd_cartan(opts, cartan_file, out);
    if (*thick_cmd) return cmd_weyl_thickenings(opts, weyl_d, weyl_pivots, out);
    if (*certify_cmd) return cmd_certify(opts, certify_rep, certify_pivots, certify_radius, certify_min_slope, out);
    if (*limitset_cmd)
      return cmd_limitset(opts, ls_rep, ls_pivots, ls_word_len, ls_power, ls_radius, ls_min_slope, ls_svg, out);
    if (*search_cmd)
      return cmd_schottky_search(opts, sk_eigs, sk_eigs_b, sk_angle, sk_pivots, sk_radius, sk_min_slope, sk_cap,
                                 sk_mult, sk_m, sk_n, out);
    if (*domain_cmd)
      return cmd_domain(opts, dm_rep, dm_pivots, dm_thickening, dm_samples, dm_seed, dm_word_len, dm_power,
                        dm_radius, dm_min_slope, dm_census, dm_census_tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << "error: no subcommand selected\n";
  return kExitError;
}

}  // namespace anosov
