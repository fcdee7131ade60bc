#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "anosov/svd.hpp"

#ifndef M_PI
#define M_PI 3.14159265358979323846
#endif

namespace anosov::testing {

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
  const int n = s.rows();
  Matrix a = s;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off == 0.0) break;
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-3 * off || apq == 0.0) continue;
        rotated = true;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
    if (!rotated && off < 1e-18) break;
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

std::vector<double> gram_log_singular_values(const Matrix& g) {
  const std::vector<double> eig = symmetric_eigenvalues(g.transpose() * g);
  std::vector<double> logs(eig.size());
  for (size_t i = 0; i < eig.size(); ++i) logs[i] = 0.5 * std::log(eig[i]);
  return logs;
}

std::vector<long double> singular_values_extended(const Matrix& g) {
  const int n = g.rows();
  std::vector<std::vector<long double>> w(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = g(i, j);
  const long double eps = 1e-19L;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        long double alpha = 0, beta = 0, gamma = 0;
        for (int i = 0; i < n; ++i) {
          alpha += w[i][p] * w[i][p];
          beta += w[i][q] * w[i][q];
          gamma += w[i][p] * w[i][q];
        }
        if (gamma == 0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const long double zeta = (beta - alpha) / (2 * gamma);
        const long double t = (zeta >= 0 ? 1.0L : -1.0L) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const long double c = 1 / std::sqrt(1 + t * t);
        const long double s = c * t;
        for (int i = 0; i < n; ++i) {
          const long double wp = w[i][p], wq = w[i][q];
          w[i][p] = c * wp - s * wq;
          w[i][q] = s * wp + c * wq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<long double> sigma(n);
  for (int j = 0; j < n; ++j) {
    long double s = 0;
    for (int i = 0; i < n; ++i) s += w[i][j] * w[i][j];
    sigma[j] = std::sqrt(s);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<long double>());
  return sigma;
}

std::vector<std::vector<int>> reduced_words(const Perm& w) {
  if (w.is_identity()) return {{}};
  std::vector<std::vector<int>> out;
  const int d = w.dim();
  for (int i = 1; i <= d - 1; ++i) {
    const Perm s = Perm::simple(d, i);
    const Perm u = s * w;
    if (u.length() < w.length()) {
      for (std::vector<int> tail : reduced_words(u)) {
        tail.insert(tail.begin(), i);
        out.push_back(std::move(tail));
      }
    }
  }
  return out;
}

namespace {

bool is_subword(const std::vector<int>& needle, const std::vector<int>& haystack) {
  size_t i = 0;
  for (int x : haystack) {
    if (i < needle.size() && needle[i] == x) ++i;
  }
  return i == needle.size();
}

}  // namespace

bool bruhat_leq_subword(const Perm& u, const Perm& v) {
  // Any fixed reduced word of v works for the subword property.
  const std::vector<int> rv = reduced_words(v).front();
  for (const std::vector<int>& ru : reduced_words(u)) {
    if (is_subword(ru, rv)) return true;
  }
  return false;
}

std::vector<Perm> subgroup_closure(int d, const std::vector<Perm>& gens) {
  std::set<Perm> seen;
  std::vector<Perm> frontier{Perm::identity(d)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& w : frontier) {
      for (const Perm& g : gens) {
        const Perm x = g * w;
        if (seen.insert(x).second) next.push_back(x);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Perm>(seen.begin(), seen.end());
}

std::vector<Thickening> balanced_by_bruteforce(const FaceType& face) {
  const int d = face.d;
  const long n = factorial(d);
  if (n > 16) throw Error("brute force oracle only for d <= 3");
  std::vector<Thickening> out;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Thickening t = Thickening::empty(d);
    for (long i = 0; i < n; ++i) t.member[i] = (mask >> i) & 1;
    const ThickeningFlags f = classify_thickening(t, face);
    if (f.downward_closed && f.balanced && f.stabilizer_invariant) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Thickening> balanced_by_ideal_enumeration(const FaceType& face) {
  const int d = face.d;
  const long n = factorial(d);
  // Linear extension: by length, then lexicographic.
  std::vector<long> order(n);
  for (long i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
    return perm_unrank(d, a).length() < perm_unrank(d, b).length();
  });
  // covers-down in terms of ranks
  std::vector<std::vector<long>> below(n);
  for (long r = 0; r < n; ++r) {
    const Perm w = perm_unrank(d, r);
    for (long s = 0; s < n; ++s) {
      if (s == r) continue;
      const Perm u = perm_unrank(d, s);
      if (u.length() == w.length() - 1 && bruhat_leq_subword(u, w)) below[r].push_back(s);
    }
  }

  std::vector<Thickening> out;
  std::vector<uint8_t> chosen(n, 0);
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == order.size()) {
      Thickening t = Thickening::empty(d);
      t.member.assign(chosen.begin(), chosen.end());
      const ThickeningFlags f = classify_thickening(t, face);
      if (f.balanced && f.stabilizer_invariant) out.push_back(std::move(t));
      return;
    }
    const long r = order[idx];
    bool can_take = true;
    for (long s : below[r]) {
      if (!chosen[s]) {
        can_take = false;
        break;
      }
    }
    if (can_take) {
      chosen[r] = 1;
      rec(idx + 1);
      chosen[r] = 0;
    }
    rec(idx + 1);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> block_ids(const FaceType& face) {
  const std::vector<int> bounds = face.block_bounds();
  std::vector<int> blk(face.d);
  int b = 0;
  for (int i = 0; i < face.d; ++i) {
    while (i >= bounds[b + 1]) ++b;
    blk[i] = b;
  }
  return blk;
}

// Normal coordinate of `flag` in the chart centered at `base`: the strictly
// block-lower L - I of the block LU factorization of base^T * flag_frame.
Matrix chart_coordinate(const Flag& base, const Flag& flag) {
  const int d = base.face.d;
  const std::vector<int> bounds = base.face.block_bounds();
  Matrix w = base.frame.transpose() * flag.frame;
  Matrix z(d, d);
  for (size_t b = 0; b + 1 < bounds.size(); ++b) {
    const int lo = bounds[b], hi = bounds[b + 1];
    // Solve rows below the block against the diagonal block.
    Matrix diag(hi - lo, hi - lo);
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j) diag(i - lo, j - lo) = w(i, j);
    const Matrix diag_inv = inverse(diag);
    for (int i = hi; i < d; ++i) {
      std::vector<double> l(hi - lo, 0.0);
      for (int c = 0; c < hi - lo; ++c) {
        double s = 0.0;
        for (int k = 0; k < hi - lo; ++k) s += w(i, lo + k) * diag_inv(k, c);
        l[c] = s;
      }
      for (int c = 0; c < hi - lo; ++c) z(i, lo + c) = l[c];
      // Eliminate so later blocks see the reduced rows.
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int k = 0; k < hi - lo; ++k) s += l[k] * w(lo + k, j);
        w(i, j) -= s;
      }
    }
  }
  return z;
}

Matrix chart_point(const Flag& base, const Matrix& x, double t) {
  const int d = base.face.d;
  Matrix pert = Matrix::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pert(i, j) += t * x(i, j);
  return base.frame * pert;
}

Matrix fd_matrix(const Matrix& g, const Flag& tau, const Flag& image, double step,
                 const std::vector<std::pair<int, int>>& coords) {
  const int m = static_cast<int>(coords.size());
  Matrix deriv(m, m);
  for (int c = 0; c < m; ++c) {
    Matrix x(tau.face.d, tau.face.d);
    x(coords[c].first, coords[c].second) = 1.0;
    const Flag plus = act(g, make_flag(tau.face, chart_point(tau, x, step)));
    const Flag minus = act(g, make_flag(tau.face, chart_point(tau, x, -step)));
    const Matrix zp = chart_coordinate(image, plus);
    const Matrix zm = chart_coordinate(image, minus);
    for (int r = 0; r < m; ++r) {
      deriv(r, c) = (zp(coords[r].first, coords[r].second) - zm(coords[r].first, coords[r].second)) / (2.0 * step);
    }
  }
  return deriv;
}

}  // namespace

double expansion_rate_fd(const Matrix& g, const Flag& tau, double step) {
  const Flag image = act(g, tau);
  const std::vector<int> blk = block_ids(tau.face);
  std::vector<std::pair<int, int>> coords;
  for (int j = 0; j < tau.face.d; ++j)
    for (int i = 0; i < tau.face.d; ++i)
      if (blk[i] > blk[j]) coords.emplace_back(i, j);

  const Matrix d_h = fd_matrix(g, tau, image, step, coords);
  const Matrix d_h2 = fd_matrix(g, tau, image, step / 2.0, coords);
  Matrix richardson(d_h.rows(), d_h.cols());
  for (int i = 0; i < d_h.rows(); ++i)
    for (int j = 0; j < d_h.cols(); ++j) richardson(i, j) = (4.0 * d_h2(i, j) - d_h(i, j)) / 3.0;
  return svd(richardson).sigma.back();
}

double rp1_angle(double x, double y) {
  double a = std::atan2(y, x);
  while (a < 0.0) a += M_PI;
  while (a >= M_PI) a -= M_PI;
  return a;
}

namespace {

double wrap_rp1(double a) {
  while (a < 0.0) a += M_PI;
  while (a >= M_PI) a -= M_PI;
  return a;
}

double apply_rp1(const Matrix& g, double theta) {
  const double x = std::cos(theta), y = std::sin(theta);
  return rp1_angle(g(0, 0) * x + g(0, 1) * y, g(1, 0) * x + g(1, 1) * y);
}

}  // namespace

bool pingpong_d2_interval(const Matrix& g, double rep_angle, double att_angle, double radius) {
  // Complement of the repelling arc, traversed counterclockwise.
  const double a = wrap_rp1(rep_angle + radius);
  const double b = wrap_rp1(rep_angle - radius);
  const double fa = apply_rp1(g, a);
  const double fb = apply_rp1(g, b);
  // Image arc from f(a) ccw to f(b); g preserves orientation (det > 0).
  const double len = wrap_rp1(fb - fa);
  const double start = wrap_rp1(fa - att_angle);  // relative to the attracting center
  const double start_signed = start > M_PI / 2 ? start - M_PI : start;
  return start_signed >= -radius && start_signed + len <= radius;
}

Matrix sym2(const Matrix& g) {
  const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  const double r2 = std::sqrt(2.0);
  return Matrix{{a * a, r2 * a * b, b * b},
                {r2 * a * c, a * d + b * c, r2 * b * d},
                {c * c, r2 * c * d, d * d}};
}

Matrix rotation2(double theta) {
  return Matrix{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
}

}  // namespace anosov::testing
