#include "anosov/schottky.hpp"

#include <algorithm>
#include <cmath>

#include "anosov/svd.hpp"

namespace anosov {

namespace {

void validate_eigenvalues(const std::vector<double>& eigs, double det_tol) {
  if (eigs.size() < 2) throw BadEigenvalues("need at least two eigenvalues");
  double log_prod = 0.0;
  for (size_t i = 0; i < eigs.size(); ++i) {
    if (!(eigs[i] > 0.0)) throw BadEigenvalues("eigenvalues must be positive");
    if (i > 0 && eigs[i] > eigs[i - 1]) throw BadEigenvalues("eigenvalues must be descending");
    log_prod += std::log(eigs[i]);
  }
  if (std::abs(log_prod) > det_tol) throw BadEigenvalues("eigenvalue product must be 1");
}

// diag(eigs^m) in scaled form, stable for any power.
ScaledMatrix diag_power_scaled(const std::vector<double>& eigs, long m) {
  const int d = static_cast<int>(eigs.size());
  double shift = -HUGE_VAL;
  std::vector<double> logs(d);
  for (int i = 0; i < d; ++i) {
    logs[i] = m * std::log(eigs[i]);
    shift = std::max(shift, logs[i]);
  }
  Matrix diag(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = std::exp(logs[i] - shift);
  ScaledMatrix s = ScaledMatrix::from(diag);
  s.log_scale += shift;
  return s;
}

ScaledMatrix conjugated_power(const Matrix& basis, const std::vector<double>& eigs, long m, const Tolerances& tol) {
  const ScaledMatrix c = ScaledMatrix::from(basis);
  const ScaledMatrix cinv = ScaledMatrix::from(inverse(basis, tol.svd_tol));
  return c.times(diag_power_scaled(eigs, m)).times(cinv);
}

Matrix reversed_columns(const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, a.cols() - 1 - j);
  return r;
}

}  // namespace

Matrix make_axial(const std::vector<double>& eigenvalues, const Matrix& conjugator, const Tolerances& tol) {
  validate_eigenvalues(eigenvalues, tol.det_tol);
  const int d = static_cast<int>(eigenvalues.size());
  if (!conjugator.square() || conjugator.rows() != d) throw DimMismatch("conjugator dimension mismatch");
  Matrix diag(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = eigenvalues[i];
  return conjugator * diag * inverse(conjugator, tol.svd_tol);
}

AxialPair AxialPair::make(const std::vector<double>& alpha_eigs, const Matrix& alpha_conj,
                          const std::vector<double>& beta_eigs, const Matrix& beta_conj, const FaceType& face,
                          const Tolerances& tol) {
  validate_eigenvalues(alpha_eigs, tol.det_tol);
  validate_eigenvalues(beta_eigs, tol.det_tol);
  const int d = face.d;
  if (static_cast<int>(alpha_eigs.size()) != d || static_cast<int>(beta_eigs.size()) != d) {
    throw DimMismatch("eigenvalue count does not match the face dimension");
  }

  AxialPair pair;
  pair.face = face;
  pair.alpha_eigs = alpha_eigs;
  pair.beta_eigs = beta_eigs;
  pair.alpha_basis = alpha_conj;
  pair.beta_basis = beta_conj;

  pair.proximality_margin = HUGE_VAL;
  for (int p : face.pivots) {
    pair.proximality_margin = std::min(pair.proximality_margin, std::log(alpha_eigs[p - 1] / alpha_eigs[p]));
    pair.proximality_margin = std::min(pair.proximality_margin, std::log(beta_eigs[p - 1] / beta_eigs[p]));
  }
  if (!(pair.proximality_margin > 0.0)) throw NotProximal("eigenvalue gaps vanish on the face pivots");

  // Attracting flags span the leading eigenvectors, repelling flags the
  // trailing ones.
  pair.alpha_plus = make_flag(face, alpha_conj, tol.svd_tol);
  pair.alpha_minus = make_flag(face, reversed_columns(alpha_conj), tol.svd_tol);
  pair.beta_plus = make_flag(face, beta_conj, tol.svd_tol);
  pair.beta_minus = make_flag(face, reversed_columns(beta_conj), tol.svd_tol);
  return pair;
}

ScaledMatrix AxialPair::alpha_power(long m, const Tolerances& tol) const {
  return conjugated_power(alpha_basis, alpha_eigs, m, tol);
}

ScaledMatrix AxialPair::beta_power(long n, const Tolerances& tol) const {
  return conjugated_power(beta_basis, beta_eigs, n, tol);
}

GenericityResult genericity_check(const AxialPair& pair, const Tolerances& tol) {
  if (!(pair.proximality_margin > 0.0)) throw NotProximal("pair is not proximal for its face");
  const Flag* flags[4] = {&pair.alpha_plus, &pair.alpha_minus, &pair.beta_plus, &pair.beta_minus};
  GenericityResult r;
  r.margin = HUGE_VAL;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      r.margin = std::min(r.margin, is_antipodal(*flags[i], *flags[j], tol.rank_tol).margin);
    }
  }
  r.generic = r.margin > tol.rank_tol;
  return r;
}

Representation schottky_rep(const AxialPair& pair, long m, long n, const Tolerances& tol) {
  if (m < 1 || n < 1) throw Error("schottky_rep needs m, n >= 1");
  // Inverses come from negative powers of the eigen form; unimodularity is
  // exact by construction (eigenvalue products are validated to be 1), so
  // the determinant re-check is skipped: it is unmeasurable from the
  // assembled entries once the power spreads the spectrum past 1/eps.
  std::vector<NamedGenerator> gens;
  gens.push_back(NamedGenerator{"A", pair.alpha_power(m, tol), true, pair.alpha_power(-m, tol)});
  gens.push_back(NamedGenerator{"B", pair.beta_power(n, tol), true, pair.beta_power(-n, tol)});
  return Representation::make_scaled(pair.face.d, std::move(gens), tol, /*verify_det=*/false);
}

PingPongCertificate pingpong_certificate(const AxialPair& pair, long m, long n, const PingPongOptions& opts,
                                         const Tolerances& tol) {
  const GenericityResult gen = genericity_check(pair, tol);
  if (!gen.generic) throw Error("pingpong_certificate requires a generic pair");

  PingPongCertificate cert;
  cert.centers = {pair.alpha_plus, pair.alpha_minus, pair.beta_plus, pair.beta_minus};
  cert.min_center_distance = HUGE_VAL;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      cert.min_center_distance = std::min(cert.min_center_distance, flag_distance(cert.centers[i], cert.centers[j]));
  cert.radius = opts.radius_multiplier * 0.5 * cert.min_center_distance;
  if (2.0 * cert.radius >= cert.min_center_distance) {
    throw NeighborhoodsOverlap("ping-pong balls are not disjoint at this radius");
  }

  const ScaledMatrix letters[4] = {pair.alpha_power(m, tol), pair.alpha_power(-m, tol), pair.beta_power(n, tol),
                                   pair.beta_power(-n, tol)};
  // Repelling center of a letter is the attracting center of its inverse.
  const int rep_of[4] = {1, 0, 3, 2};

  Rng rng(opts.seed);
  cert.samples_per_letter = opts.samples;
  cert.pass = true;
  for (int li = 0; li < 4; ++li) {
    const Flag& att = cert.centers[li];
    const Flag& rep = cert.centers[rep_of[li]];
    double margin = HUGE_VAL;
    int used = 0;
    int guard = 0;
    while (used < opts.samples && guard < opts.samples * 200) {
      ++guard;
      Flag sigma = random_flag(pair.face, rng);
      double dist = flag_distance(sigma, rep);
      if (dist < cert.radius) continue;
      ++used;
      margin = std::min(margin, cert.radius - flag_distance(act(letters[li], sigma), att));
      // Pull every other sample onto the repelling sphere, the worst case
      // for the inclusion.
      if (used % 2 == 0) {
        double lo = 0.0, hi = 1.0;
        Flag shell = sigma;
        bool have_shell = false;
        for (int it = 0; it < 30; ++it) {
          const double t = 0.5 * (lo + hi);
          Matrix blend(pair.face.d, pair.face.d);
          for (int r = 0; r < pair.face.d; ++r)
            for (int c = 0; c < pair.face.d; ++c)
              blend(r, c) = (1.0 - t) * sigma.frame(r, c) + t * rep.frame(r, c);
          try {
            Flag cand = make_flag(pair.face, blend, tol.svd_tol);
            const double dcand = flag_distance(cand, rep);
            if (dcand >= cert.radius) {
              shell = cand;
              have_shell = true;
              lo = t;
            } else {
              hi = t;
            }
          } catch (const SingularInput&) {
            hi = t;
          }
        }
        if (have_shell) {
          margin = std::min(margin, cert.radius - flag_distance(act(letters[li], shell), att));
        }
      }
    }
    if (used < opts.samples) throw Error("could not sample the ping-pong complement");
    cert.margins[li] = margin;
    if (!(margin > 0.0)) cert.pass = false;
  }
  return cert;
}

PowerSearchResult find_min_powers(const AxialPair& pair, int L, double min_slope, long cap,
                                  const PingPongOptions& pp_opts, const EnumOptions& enum_opts,
                                  const Tolerances& tol) {
  const GenericityResult gen = genericity_check(pair, tol);
  if (!gen.generic) throw Error("find_min_powers requires a generic pair");
  for (long m = 1; m <= cap; ++m) {
    PingPongCertificate pp = pingpong_certificate(pair, m, m, pp_opts, tol);
    if (!pp.pass) continue;
    URUCertificate uru = certify_uru(schottky_rep(pair, m, m, tol), pair.face, L, min_slope, enum_opts);
    if (uru.pass) return PowerSearchResult{m, std::move(pp), std::move(uru)};
  }
  throw CapExceeded("no power up to the cap passes both certificates");
}

}  // namespace anosov
