#include "anosov/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "anosov/svd.hpp"

namespace anosov {

LimitSample limit_set_sample(const Representation& rho, const FaceType& face, int word_len, int power,
                             const URUCertificate* cert, const LimitSampleOptions& opts) {
  if (face.d != rho.dim()) throw DimMismatch("face dimension does not match representation");
  if (word_len < 1 || power < 1) throw Error("limit_set_sample needs word_len >= 1 and power >= 1");

  LimitSample sample;
  sample.face = face;
  sample.certified = cert != nullptr && cert->pass;

  long seen = 0;
  Word w;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(w.size()) == word_len) {
      if (!is_cyclically_reduced(w)) return;
      if (++seen > opts.max_words) throw BallTooLarge("limit sample word count exceeds max_words");
      try {
        const ScaledMatrix powered = rho.evaluate(w).power(power);
        Flag flag = attracting_flag(powered, face, opts.min_gap);
        for (const LimitPoint& p : sample.points) {
          if (flag_distance(p.flag, flag) < opts.dedup_distance) {
            ++sample.merged_duplicates;
            return;
          }
        }
        sample.points.push_back(LimitPoint{std::move(flag), w});
      } catch (const NotRegular&) {
        ++sample.skipped_words;
      }
      return;
    }
    for (int g = 0; g < rho.rank(); ++g) {
      for (int inv = 0; inv < 2; ++inv) {
        const Letter l{g, inv != 0};
        if (!w.empty() && w.back() == l.inverted()) continue;
        w.push_back(l);
        rec();
        w.pop_back();
      }
    }
  };
  rec();

  const double rank_tol = rho.tolerances().rank_tol;
  for (size_t i = 0; i < sample.points.size(); ++i) {
    for (size_t j = i + 1; j < sample.points.size(); ++j) {
      sample.min_pairwise_margin =
          std::min(sample.min_pairwise_margin, is_antipodal(sample.points[i].flag, sample.points[j].flag, rank_tol).margin);
    }
  }
  return sample;
}

std::vector<Flag> boundary_map_sample(const Representation& rho, const FaceType& face, const Word& ray, int n,
                                      double min_gap) {
  if (!is_reduced(ray)) throw NotReduced("ray prefix must be reduced");
  if (n < 1 || n > static_cast<int>(ray.size())) throw Error("prefix length out of range");
  std::vector<Flag> flags;
  flags.reserve(n);
  ScaledMatrix acc = ScaledMatrix::from(Matrix::identity(rho.dim()));
  for (int k = 0; k < n; ++k) {
    acc = acc.times(rho.letter_matrix(ray[k]));
    flags.push_back(attracting_flag(acc, face, min_gap));
  }
  return flags;
}

ExpansionSeries expansion_series(const Representation& rho, const FaceType& face, const Word& ray, int n,
                                 double converge_tol) {
  const std::vector<Flag> flags = boundary_map_sample(rho, face, ray, n);
  if (flags.size() >= 2 && flag_distance(flags[flags.size() - 1], flags[flags.size() - 2]) > converge_tol) {
    throw NotConverged("boundary map did not converge at the requested tolerance");
  }
  ExpansionSeries series;
  series.boundary_flag = flags.back();

  Word prefix;
  for (int k = 1; k <= n; ++k) {
    prefix.push_back(ray[k - 1]);
    // Inverse of the prefix evaluated letter by letter; exact generator
    // inverses keep the product well conditioned factor-wise.
    const ScaledMatrix h = rho.evaluate(inverse_word(prefix));
    series.rates.push_back(expansion_rate(h, series.boundary_flag, rho.tolerances().svd_tol));
  }

  // Least squares slope of log eps against k.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= n; ++k) {
    const double y = std::log(std::max(series.rates[k - 1], 1e-300));
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
  }
  const double denom = n * sxx - sx * sx;
  series.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  series.max_rate = *std::max_element(series.rates.begin(), series.rates.end());

  // Non-uniform divergence evidence: the running maximum still advances in
  // the last third of the series.
  const int cut = n - std::max(1, n / 3);
  double head_max = 0.0;
  for (int k = 0; k < cut; ++k) head_max = std::max(head_max, series.rates[k]);
  series.diverging = series.max_rate > head_max * (1.0 + 1e-9);
  return series;
}

std::vector<ExpansionWitness> expansion_at_limit_set(const Representation& rho, const LimitSample& sample,
                                                     int radius) {
  if (sample.points.empty()) throw Error("expansion_at_limit_set needs a nonempty sample");
  std::vector<ExpansionWitness> out(sample.points.size());

  // Collect the radius ball once.
  std::vector<Word> ball;
  Word w;
  std::function<void()> rec = [&]() {
    if (!w.empty()) ball.push_back(w);
    if (static_cast<int>(w.size()) == radius) return;
    for (int g = 0; g < rho.rank(); ++g) {
      for (int inv = 0; inv < 2; ++inv) {
        const Letter l{g, inv != 0};
        if (!w.empty() && w.back() == l.inverted()) continue;
        w.push_back(l);
        rec();
        w.pop_back();
      }
    }
  };
  rec();

  for (size_t i = 0; i < sample.points.size(); ++i) {
    ExpansionWitness& best = out[i];
    for (const Word& cand : ball) {
      const double rate = expansion_rate(rho.evaluate(cand), sample.points[i].flag, rho.tolerances().svd_tol);
      if (rate > best.rate) {
        best.rate = rate;
        best.word = cand;
      }
    }
    best.margin = best.rate - 1.0;
    best.found = best.margin > 1e-6;
  }
  return out;
}

}  // namespace anosov
