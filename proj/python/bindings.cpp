#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anosov/cartan.hpp"
#include "anosov/domains.hpp"
#include "anosov/io.hpp"
#include "anosov/limits.hpp"
#include "anosov/schottky.hpp"
#include "anosov/version.hpp"

namespace py = pybind11;
using namespace anosov;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  const int r = static_cast<int>(rows.size());
  if (r == 0) throw Error("empty matrix");
  const int c = static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw Error("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows from_matrix(const Matrix& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

FaceType make_face(int d, const std::vector<int>& pivots) {
  if (pivots.empty()) return FaceType::full(d);
  return FaceType(d, pivots);
}

Perm to_perm(const std::vector<int>& one_based) {
  std::vector<int> img(one_based.size());
  for (size_t i = 0; i < one_based.size(); ++i) img[i] = one_based[i] - 1;
  return Perm(std::move(img));
}

std::vector<int> from_perm(const Perm& p) {
  std::vector<int> img(p.dim());
  for (int i = 0; i < p.dim(); ++i) img[i] = p.image(i) + 1;
  return img;
}

py::dict cert_dict(const URUCertificate& cert) {
  py::dict d;
  d["pass"] = cert.pass;
  d["c"] = cert.c;
  d["a"] = cert.a;
  d["c_qi"] = cert.c_qi;
  d["a_qi"] = cert.a_qi;
  d["margin"] = cert.margin;
  d["tail_ok"] = cert.tail_ok;
  d["L"] = cert.L;
  py::list gaps, norms;
  for (const GapRecord& r : cert.profile.per_length) {
    gaps.append(r.min_gap);
    norms.append(r.min_norm);
  }
  d["min_gaps"] = gaps;
  d["min_norms"] = norms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Anosov subgroup toolkit: Cartan projections, Weyl thickenings, URU certification, "
            "Schottky construction, limit sets and domains of discontinuity";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "AnosovError");

  // core linear algebra
  m.def("cartan_projection", [](const Rows& g) { return cartan_projection(to_matrix(g)).components; },
        py::arg("matrix"), "Sorted log singular values");
  m.def("kak", [](const Rows& g) {
    const KAKDecomposition r = kak(to_matrix(g));
    return py::make_tuple(from_matrix(r.k1), r.a.components, from_matrix(r.k2));
  });
  m.def("root_gaps", [](const std::vector<double>& v, const std::vector<int>& pivots) {
    CartanVector cv{std::vector<double>(v)};
    return root_gaps(cv, make_face(cv.dim(), pivots));
  });
  m.def("make_unimodular", [](const Rows& g) { return from_matrix(make_unimodular(to_matrix(g))); });

  // Weyl combinatorics (permutations as 1-based image arrays)
  m.def("bruhat_leq", [](const std::vector<int>& u, const std::vector<int>& v) {
    return bruhat_leq(to_perm(u), to_perm(v));
  });
  m.def("longest_element", [](int d) { return from_perm(longest_element(d)); });
  m.def("opposition", [](const std::vector<int>& w) { return from_perm(opposition(to_perm(w))); });
  m.def("face_stabilizer", [](int d, const std::vector<int>& pivots) {
    std::vector<std::vector<int>> out;
    for (const Perm& p : face_stabilizer(make_face(d, pivots))) out.push_back(from_perm(p));
    return out;
  });
  m.def("coset_min_rep", [](const std::vector<int>& w, const std::vector<int>& pivots) {
    const Perm p = to_perm(w);
    return from_perm(coset_min_rep(p, make_face(p.dim(), pivots)));
  });
  m.def("classify_thickening", [](int d, const std::vector<std::vector<int>>& members,
                                  const std::vector<int>& pivots) {
    std::vector<Perm> ps;
    for (const auto& w : members) ps.push_back(to_perm(w));
    const ThickeningFlags f = classify_thickening(Thickening::from_perms(d, ps), make_face(d, pivots));
    py::dict out;
    out["downward_closed"] = f.downward_closed;
    out["fat"] = f.fat;
    out["slim"] = f.slim;
    out["balanced"] = f.balanced;
    out["stabilizer_invariant"] = f.stabilizer_invariant;
    return out;
  }, py::arg("d"), py::arg("members"), py::arg("pivots") = std::vector<int>{});
  m.def("enumerate_balanced", [](int d, const std::vector<int>& pivots) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const Thickening& t : enumerate_balanced(d, make_face(d, pivots))) {
      std::vector<std::vector<int>> members;
      for (const Perm& p : t.members_by_length()) members.push_back(from_perm(p));
      out.push_back(std::move(members));
    }
    return out;
  }, py::arg("d"), py::arg("pivots") = std::vector<int>{});

  // flag geometry
  m.def("act", [](const Rows& g, const Rows& frame, const std::vector<int>& pivots) {
    const Matrix fr = to_matrix(frame);
    const Flag f = make_flag(make_face(fr.rows(), pivots), fr);
    return from_matrix(act(to_matrix(g), f).frame);
  }, py::arg("g"), py::arg("frame"), py::arg("pivots") = std::vector<int>{});
  m.def("is_antipodal", [](const Rows& f1, const Rows& f2, const std::vector<int>& pivots) {
    const Matrix m1 = to_matrix(f1), m2 = to_matrix(f2);
    const FaceType face = make_face(m1.rows(), pivots);
    const AntipodalityResult r = is_antipodal(make_flag(face, m1), make_flag(face, m2));
    return py::make_tuple(r.antipodal, r.margin);
  }, py::arg("frame1"), py::arg("frame2"), py::arg("pivots") = std::vector<int>{});
  m.def("flag_distance", [](const Rows& f1, const Rows& f2, const std::vector<int>& pivots) {
    const Matrix m1 = to_matrix(f1), m2 = to_matrix(f2);
    const FaceType face = make_face(m1.rows(), pivots);
    return flag_distance(make_flag(face, m1), make_flag(face, m2));
  }, py::arg("frame1"), py::arg("frame2"), py::arg("pivots") = std::vector<int>{});
  m.def("relative_position", [](const Rows& chamber, const Rows& flag, const std::vector<int>& pivots) {
    const Matrix mc = to_matrix(chamber), mf = to_matrix(flag);
    const FaceType face = make_face(mf.rows(), pivots);
    const Perm w = relative_position(make_flag(FaceType::full(mc.rows()), mc), make_flag(face, mf));
    return from_perm(coset_min_rep(w, face));
  }, py::arg("chamber"), py::arg("flag"), py::arg("pivots") = std::vector<int>{});
  m.def("expansion_rate", [](const Rows& g, const Rows& frame, const std::vector<int>& pivots) {
    const Matrix fr = to_matrix(frame);
    return expansion_rate(to_matrix(g), make_flag(make_face(fr.rows(), pivots), fr));
  }, py::arg("g"), py::arg("frame"), py::arg("pivots") = std::vector<int>{});

  // representations and certification
  py::class_<Representation>(m, "Representation")
      .def(py::init([](const std::vector<std::pair<std::string, Rows>>& gens) {
        std::vector<std::pair<std::string, Matrix>> named;
        for (const auto& [name, rows] : gens) named.emplace_back(name, to_matrix(rows));
        return Representation::make(std::move(named));
      }))
      .def_property_readonly("dim", &Representation::dim)
      .def_property_readonly("rank", &Representation::rank)
      .def_property_readonly("names", &Representation::names)
      .def("evaluate", [](const Representation& rho, const std::string& word) {
        const ScaledMatrix g = rho.evaluate(parse_word(word, rho.names()));
        return py::make_tuple(from_matrix(g.m), g.log_scale);
      })
      .def("word_cartan", [](const Representation& rho, const std::string& word) {
        return rho.word_cartan(parse_word(word, rho.names())).components;
      });

  m.def("gap_profile", [](const Representation& rho, const std::vector<int>& pivots, int L) {
    const GapProfile p = gap_profile(rho, make_face(rho.dim(), pivots), L);
    py::list out;
    for (const GapRecord& r : p.per_length) {
      py::dict rec;
      rec["len"] = r.len;
      rec["min_gap"] = r.min_gap;
      rec["min_norm"] = r.min_norm;
      rec["argmin_gap_word"] = word_str(r.argmin_gap, rho.names());
      rec["words"] = r.words;
      out.append(rec);
    }
    return out;
  }, py::arg("rep"), py::arg("pivots"), py::arg("L"));
  m.def("certify_uru", [](const Representation& rho, const std::vector<int>& pivots, int L, double min_slope) {
    return cert_dict(certify_uru(rho, make_face(rho.dim(), pivots), L, min_slope));
  }, py::arg("rep"), py::arg("pivots"), py::arg("L"), py::arg("min_slope") = 0.05);
  m.def("additivity_defect", [](const Representation& rho, const std::vector<int>& pivots, int L) {
    py::list out;
    for (const DefectRecord& r : additivity_defect(rho, make_face(rho.dim(), pivots), L)) {
      out.append(py::make_tuple(r.len, r.max_defect));
    }
    return out;
  });
  m.def("limit_set_sample", [](const Representation& rho, const std::vector<int>& pivots, int word_len, int power,
                               int radius, double min_slope) {
    const FaceType face = make_face(rho.dim(), pivots);
    const URUCertificate cert = certify_uru(rho, face, radius, min_slope);
    const LimitSample s = limit_set_sample(rho, face, word_len, power, &cert);
    py::dict out;
    py::list pts;
    for (const LimitPoint& p : s.points) {
      pts.append(py::make_tuple(word_str(p.word, rho.names()), from_matrix(p.flag.frame)));
    }
    out["points"] = pts;
    out["min_pairwise_margin"] = s.min_pairwise_margin;
    out["skipped"] = s.skipped_words;
    out["certified"] = s.certified;
    return out;
  }, py::arg("rep"), py::arg("pivots"), py::arg("word_len") = 6, py::arg("power") = 40, py::arg("radius") = 8,
     py::arg("min_slope") = 0.05);
  m.def("expansion_series", [](const Representation& rho, const std::vector<int>& pivots, const std::string& ray,
                               int n) {
    const Word w = parse_word(ray, rho.names());
    const ExpansionSeries s = expansion_series(rho, make_face(rho.dim(), pivots), ray_prefix(w, n), n);
    py::dict out;
    out["rates"] = s.rates;
    out["slope"] = s.slope;
    out["max_rate"] = s.max_rate;
    out["diverging"] = s.diverging;
    return out;
  }, py::arg("rep"), py::arg("pivots"), py::arg("ray"), py::arg("n") = 12);

  // Schottky pipeline
  m.def("make_axial", [](const std::vector<double>& eigs, const Rows& conj) {
    return from_matrix(make_axial(eigs, to_matrix(conj)));
  });
  py::class_<AxialPair>(m, "AxialPair")
      .def(py::init([](const std::vector<double>& eigs_a, const Rows& conj_a, const std::vector<double>& eigs_b,
                       const Rows& conj_b, const std::vector<int>& pivots) {
        return AxialPair::make(eigs_a, to_matrix(conj_a), eigs_b, to_matrix(conj_b),
                               make_face(static_cast<int>(eigs_a.size()), pivots));
      }), py::arg("eigs_a"), py::arg("conj_a"), py::arg("eigs_b"), py::arg("conj_b"),
          py::arg("pivots") = std::vector<int>{})
      .def_property_readonly("proximality_margin", [](const AxialPair& p) { return p.proximality_margin; });
  m.def("genericity_check", [](const AxialPair& pair) {
    const GenericityResult r = genericity_check(pair);
    return py::make_tuple(r.generic, r.margin);
  });
  m.def("schottky_rep", [](const AxialPair& pair, long mm, long nn) { return schottky_rep(pair, mm, nn); },
        py::arg("pair"), py::arg("m"), py::arg("n"));
  m.def("pingpong_certificate", [](const AxialPair& pair, long mm, long nn, double mult) {
    PingPongOptions opts;
    opts.radius_multiplier = mult;
    const PingPongCertificate c = pingpong_certificate(pair, mm, nn, opts);
    py::dict out;
    out["pass"] = c.pass;
    out["radius"] = c.radius;
    out["margins"] = std::vector<double>(c.margins.begin(), c.margins.end());
    return out;
  }, py::arg("pair"), py::arg("m"), py::arg("n"), py::arg("mult") = 0.8);
  m.def("find_min_powers", [](const AxialPair& pair, int L, double min_slope, long cap) {
    const PowerSearchResult r = find_min_powers(pair, L, min_slope, cap);
    py::dict out;
    out["power"] = r.power;
    out["uru"] = cert_dict(r.uru);
    return out;
  }, py::arg("pair"), py::arg("L") = 8, py::arg("min_slope") = 0.05, py::arg("cap") = 64);
}
