#include "anosov/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "anosov/cartan.hpp"

namespace anosov {

namespace {

struct Minima {
  double gap = HUGE_VAL;
  double norm = HUGE_VAL;
  Word argmin_gap;
  Word argmin_norm;
  long words = 0;
};

// Deterministic reduction: smaller value wins, ties by word order. The
// merge is associative and commutative, so shard scheduling cannot change
// the result.
void absorb(Minima& acc, double gap, double norm, const Word& w) {
  ++acc.words;
  if (gap < acc.gap || (gap == acc.gap && word_less(w, acc.argmin_gap))) {
    acc.gap = gap;
    acc.argmin_gap = w;
  }
  if (norm < acc.norm || (norm == acc.norm && word_less(w, acc.argmin_norm))) {
    acc.norm = norm;
    acc.argmin_norm = w;
  }
}

void merge(Minima& acc, const Minima& o) {
  acc.words += o.words;
  if (o.gap < acc.gap || (o.gap == acc.gap && word_less(o.argmin_gap, acc.argmin_gap))) {
    acc.gap = o.gap;
    acc.argmin_gap = o.argmin_gap;
  }
  if (o.norm < acc.norm || (o.norm == acc.norm && word_less(o.argmin_norm, acc.argmin_norm))) {
    acc.norm = o.norm;
    acc.argmin_norm = o.argmin_norm;
  }
}

void dfs_ball(const Representation& rho, const FaceType& face, Word& w, const CompoundTrack& track, int L,
              std::vector<Minima>& out) {
  const int len = static_cast<int>(w.size());
  if (len > 0) {
    const CartanVector v = track.cartan();
    absorb(out[len - 1], min_root_gap(v, face), v.norm(), w);
  }
  if (len == L) return;
  const int r = rho.rank();
  for (int g = 0; g < r; ++g) {
    for (int inv = 0; inv < 2; ++inv) {
      const Letter l{g, inv != 0};
      if (!w.empty() && w.back() == l.inverted()) continue;
      w.push_back(l);
      dfs_ball(rho, face, w, track.times(rho.letter_track(l)), L, out);
      w.pop_back();
    }
  }
}

}  // namespace

GapProfile gap_profile(const Representation& rho, const FaceType& face, int L, const EnumOptions& opts) {
  if (face.d != rho.dim()) throw DimMismatch("face dimension does not match representation");
  if (L < 1) throw Error("gap_profile needs L >= 1");
  if (count_ball(rho.rank(), L, opts.budget) > opts.budget) {
    throw BallTooLarge("word ball exceeds the evaluation budget");
  }

  // Shards: one per first letter; depth-first within a shard.
  std::vector<Letter> shards;
  for (int g = 0; g < rho.rank(); ++g) {
    shards.push_back(Letter{g, false});
    shards.push_back(Letter{g, true});
  }
  const int nthreads = std::max(1, std::min<int>(opts.threads, static_cast<int>(shards.size())));
  std::vector<std::vector<Minima>> shard_minima(shards.size(), std::vector<Minima>(L));

  auto run_shard = [&](size_t si) {
    Word w{shards[si]};
    dfs_ball(rho, face, w, rho.letter_track(shards[si]), L, shard_minima[si]);
  };

  if (nthreads == 1) {
    for (size_t si = 0; si < shards.size(); ++si) run_shard(si);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t]() {
        for (size_t si = t; si < shards.size(); si += nthreads) run_shard(si);
      });
    }
    for (auto& th : pool) th.join();
  }

  GapProfile profile;
  profile.face = face;
  profile.per_length.resize(L);
  for (int l = 0; l < L; ++l) {
    Minima acc;
    for (size_t si = 0; si < shards.size(); ++si) merge(acc, shard_minima[si][l]);
    GapRecord& rec = profile.per_length[l];
    rec.len = l + 1;
    rec.min_gap = acc.gap;
    rec.min_norm = acc.norm;
    rec.argmin_gap = acc.argmin_gap;
    rec.argmin_norm = acc.argmin_norm;
    rec.words = acc.words;
  }
  return profile;
}

DriftFit minorant_fit(const std::vector<double>& minima) {
  // Lower convex hull of (0,0),(1,m_1),...,(L,m_L); the fitted line is the
  // hull's final segment, the largest slope supported with intercept >= 0.
  const int L = static_cast<int>(minima.size());
  std::vector<std::pair<double, double>> hull;  // (x, y)
  hull.emplace_back(0.0, 0.0);
  for (int l = 1; l <= L; ++l) {
    const std::pair<double, double> p{static_cast<double>(l), minima[l - 1]};
    while (hull.size() >= 2) {
      const auto& b = hull[hull.size() - 1];
      const auto& a = hull[hull.size() - 2];
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  DriftFit fit;
  if (hull.size() < 2) return fit;
  const auto& last = hull.back();
  const auto& prev = hull[hull.size() - 2];
  fit.slope = (last.second - prev.second) / (last.first - prev.first);
  fit.intercept = std::max(0.0, fit.slope * prev.first - prev.second);
  return fit;
}

URUCertificate certify_uru(const Representation& rho, const FaceType& face, int L, double min_slope,
                           const EnumOptions& opts) {
  URUCertificate cert;
  cert.face = face;
  cert.L = L;
  cert.min_slope = min_slope;
  cert.profile = gap_profile(rho, face, L, opts);

  std::vector<double> gaps(L), norms(L);
  for (int l = 0; l < L; ++l) {
    gaps[l] = cert.profile.per_length[l].min_gap;
    norms[l] = cert.profile.per_length[l].min_norm;
  }
  const DriftFit gap_fit = minorant_fit(gaps);
  const DriftFit norm_fit = minorant_fit(norms);
  cert.c = gap_fit.slope;
  cert.a = gap_fit.intercept;
  cert.c_qi = norm_fit.slope;
  cert.a_qi = norm_fit.intercept;

  cert.margin = HUGE_VAL;
  for (int l = 1; l <= L; ++l) {
    cert.margin = std::min(cert.margin, gaps[l - 1] - (cert.c * l - cert.a));
  }

  // Tail guard: the last third must still grow at half the fitted rate,
  // otherwise the fit is a pre-asymptotic fluke (sublinear profiles pass
  // chord fits at any finite radius).
  const int window = std::max(1, L / 3);
  const int l0 = L - window;
  const double base = (l0 == 0) ? 0.0 : gaps[l0 - 1];
  cert.tail_ok = true;
  for (int l = l0 + 1; l <= L; ++l) {
    if (gaps[l - 1] - base < 0.5 * cert.c * (l - l0) - 1e-9) {
      cert.tail_ok = false;
      break;
    }
  }

  cert.pass = (cert.c >= min_slope) && cert.tail_ok && (cert.c_qi > 0.0) && (cert.margin >= -1e-9);
  return cert;
}

std::vector<DefectRecord> additivity_defect(const Representation& rho, const FaceType& face, int L,
                                            const EnumOptions& opts) {
  if (face.d != rho.dim()) throw DimMismatch("face dimension does not match representation");
  if (L < 2) throw Error("additivity_defect needs L >= 2");
  if (count_ball(rho.rank(), L, opts.budget) > opts.budget) {
    throw BallTooLarge("word ball exceeds the evaluation budget");
  }

  struct Suffix {
    Word w;
    CompoundTrack track;
    CartanVector cartan;
  };
  // Pool of all reduced words of a fixed length, with their tracks.
  auto build_pool = [&](int len) {
    std::vector<Suffix> pool;
    Word w;
    std::function<void(const CompoundTrack&)> rec = [&](const CompoundTrack& track) {
      if (static_cast<int>(w.size()) == len) {
        pool.push_back(Suffix{w, track, track.cartan()});
        return;
      }
      for (int g = 0; g < rho.rank(); ++g) {
        for (int inv = 0; inv < 2; ++inv) {
          const Letter l{g, inv != 0};
          if (!w.empty() && w.back() == l.inverted()) continue;
          w.push_back(l);
          rec(track.times(rho.letter_track(l)));
          w.pop_back();
        }
      }
    };
    rec(CompoundTrack::identity(rho.dim()));
    return pool;
  };

  std::vector<DefectRecord> table;
  std::vector<std::vector<Suffix>> pools(L / 2 + 1);
  for (int len = 2; len <= L; ++len) {
    const int len1 = (len + 1) / 2;
    const int len2 = len - len1;
    if (pools[len2].empty()) pools[len2] = build_pool(len2);
    const auto& pool = pools[len2];

    DefectRecord rec;
    rec.len = len;
    Word w1;
    std::function<void(const CompoundTrack&)> walk = [&](const CompoundTrack& track1) {
      if (static_cast<int>(w1.size()) == len1) {
        const CartanVector c1 = track1.cartan();
        const Letter last = w1.back();
        for (const Suffix& suf : pool) {
          if (suf.w.front() == last.inverted()) continue;
          const CartanVector c12 = track1.times(suf.track).cartan();
          double defect = 0.0;
          for (int i = 0; i < rho.dim(); ++i) {
            defect = std::max(defect, std::abs(c12.components[i] - c1.components[i] - suf.cartan.components[i]));
          }
          if (defect > rec.max_defect) {
            rec.max_defect = defect;
            rec.argmax = w1;
            rec.argmax.insert(rec.argmax.end(), suf.w.begin(), suf.w.end());
          }
        }
        return;
      }
      for (int g = 0; g < rho.rank(); ++g) {
        for (int inv = 0; inv < 2; ++inv) {
          const Letter l{g, inv != 0};
          if (!w1.empty() && w1.back() == l.inverted()) continue;
          w1.push_back(l);
          walk(track1.times(rho.letter_track(l)));
          w1.pop_back();
        }
      }
    };
    walk(CompoundTrack::identity(rho.dim()));
    table.push_back(std::move(rec));
  }
  return table;
}

}  // namespace anosov
