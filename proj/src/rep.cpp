#include "anosov/rep.hpp"

#include <algorithm>
#include <cmath>

#include "anosov/svd.hpp"

namespace anosov {

Representation Representation::make(std::vector<std::pair<std::string, Matrix>> generators, Tolerances tol) {
  std::vector<NamedGenerator> scaled;
  if (generators.empty()) throw Error("representation needs at least one generator");
  const int d = generators.front().second.rows();
  scaled.reserve(generators.size());
  for (auto& [name, g] : generators) {
    if (!g.square() || g.rows() != d) throw DimMismatch("generator dimension mismatch");
    if (!g.is_finite()) throw NonFinite("generator has non-finite entries");
    const double det = determinant(g);
    if (std::abs(det - 1.0) > tol.det_tol) throw NotUnimodular("generator '" + name + "' is not unimodular");
    scaled.push_back(NamedGenerator{name, ScaledMatrix::from(g), false, {}});
  }
  return make_scaled(d, std::move(scaled), tol);
}

Representation Representation::make_scaled(int d, std::vector<NamedGenerator> generators, Tolerances tol,
                                           bool verify_det) {
  if (generators.empty()) throw Error("representation needs at least one generator");
  Representation rho;
  rho.d_ = d;
  rho.tol_ = tol;
  for (auto& gen : generators) {
    if (gen.image.dim() != d) throw DimMismatch("generator dimension mismatch");
    if (gen.name.size() != 1 || !std::isupper(static_cast<unsigned char>(gen.name[0]))) {
      throw Error("generator names must be single upper-case letters, got '" + gen.name + "'");
    }
    for (const std::string& seen : rho.names_) {
      if (seen == gen.name) throw Error("duplicate generator name '" + gen.name + "'");
    }
    if (verify_det) {
      int sign = 0;
      const double logdet = log_abs_determinant(gen.image.m, &sign) + d * gen.image.log_scale;
      if (sign <= 0 || std::abs(logdet) > tol.det_tol) {
        throw NotUnimodular("generator '" + gen.name + "' is not unimodular");
      }
    }
    rho.names_.push_back(gen.name);
    rho.gens_.push_back(gen.image);
    rho.gens_.push_back(gen.has_inverse ? gen.inverse : gen.image.inverse_scaled(tol.svd_tol));
  }
  rho.tracks_.reserve(rho.gens_.size());
  for (const ScaledMatrix& g : rho.gens_) rho.tracks_.push_back(CompoundTrack::from(g));
  return rho;
}

const ScaledMatrix& Representation::letter_matrix(const Letter& l) const {
  if (l.gen < 0 || l.gen >= rank()) throw UnknownGenerator("generator index out of range");
  return gens_[2 * l.gen + (l.inverse ? 1 : 0)];
}

const CompoundTrack& Representation::letter_track(const Letter& l) const {
  if (l.gen < 0 || l.gen >= rank()) throw UnknownGenerator("generator index out of range");
  return tracks_[2 * l.gen + (l.inverse ? 1 : 0)];
}

ScaledMatrix Representation::evaluate(const Word& w) const {
  if (!is_reduced(w)) throw NotReduced("evaluate requires a reduced word");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->map.find(w);
    if (it != cache_->map.end()) return it->second;
  }
  ScaledMatrix acc = ScaledMatrix::from(Matrix::identity(d_));
  for (const Letter& l : w) acc = acc.times(letter_matrix(l));
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->map.size() > 20000) cache_->map.clear();
    cache_->map.emplace(w, acc);
  }
  return acc;
}

CartanVector Representation::word_cartan(const Word& w) const {
  if (!is_reduced(w)) throw NotReduced("word_cartan requires a reduced word");
  CompoundTrack t = CompoundTrack::identity(d_);
  for (const Letter& l : w) t = t.times(letter_track(l));
  return t.cartan();
}

}  // namespace anosov
