// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>

#include "lmlab/parse.hpp"

namespace lmlab {

/// Ring homomorphism source -> target given by the images of the source
/// variables. Variables without an image are rejected by substitute()
/// only when they actually occur.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target)
      : source_(std::move(source)), target_(std::move(target)), images_(source_->nvars()) {}

  /// Every source variable that also exists in the target maps to itself.
  static RingMap identity_on_shared(RingPtr source, RingPtr target) {
    RingMap m(source, target);
    for (std::size_t v = 0; v < source->nvars(); ++v)
      if (target->has(source->name(v))) m.images_[v] = Polynomial::variable(target, source->name(v));
    return m;
  }

  RingMap& set(std::string_view var, Polynomial image) {
    images_[source_->index(var)] = image.in_ring(target_);
    return *this;
  }
  RingMap& set(std::string_view var, std::string_view image_text) {
    return set(var, parse_poly(image_text, target_));
  }

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::optional<Polynomial>& image(std::size_t var) const { return images_[var]; }
  const std::optional<Polynomial>& image(std::string_view var) const { return images_[source_->index(var)]; }

  Polynomial operator()(const Polynomial& p) const { return apply(p); }

  Polynomial apply(const Polynomial& p) const {
    Polynomial q = p.in_ring(source_);
    const std::size_t nv = source_->nvars();
    std::vector<std::vector<Polynomial>> powers(nv);  // powers[v][e-1] = image^e
    auto power = [&](std::size_t v, Exponent e) -> const Polynomial& {
      if (!images_[v]) throw RingError("unmapped variable '" + source_->name(v) + "'");
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(*images_[v]);
      while (cache.size() < e) cache.push_back(cache.back() * cache.front());
      return cache[e - 1];
    };
    std::vector<Polynomial> terms;
    terms.reserve(q.size());
    for (std::size_t t = 0; t < q.size(); ++t) {
      Polynomial m = Polynomial::constant(target_, q.coeff(t));
      const Exponent* e = q.exps(t);
      for (std::size_t v = 0; v < nv; ++v)
        if (e[v]) m = m * power(v, e[v]);
      terms.push_back(std::move(m));
    }
    return sum(std::move(terms), target_);
  }

  /// Pairwise summation keeps merges balanced.
  static Polynomial sum(std::vector<Polynomial> terms, const RingPtr& ring) {
    if (terms.empty()) return Polynomial(ring);
    while (terms.size() > 1) {
      std::vector<Polynomial> next;
      next.reserve((terms.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
      if (terms.size() % 2) next.push_back(std::move(terms.back()));
      terms = std::move(next);
    }
    return std::move(terms.front());
  }

 private:
  RingPtr source_, target_;
  std::vector<std::optional<Polynomial>> images_;
};

inline Polynomial substitute(const Polynomial& p, const RingMap& map) { return map.apply(p); }

/// Value at a rational point given per ring variable.
inline Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
  if (point.size() != p.ring()->nvars()) throw RingError("evaluation point has wrong length");
  Rational total = 0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Rational m = p.coeff(t);
    const Exponent* e = p.exps(t);
    for (std::size_t v = 0; v < point.size(); ++v)
      for (Exponent k = 0; k < e[v]; ++k) m *= point[v];
    total += m;
  }
  return total;
}

inline Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
  std::vector<Rational> pt(p.ring()->nvars());
  for (std::size_t v = 0; v < pt.size(); ++v) {
    auto it = point.find(p.ring()->name(v));
    if (it != point.end())
      pt[v] = it->second;
    else if (p.uses(v))
      throw RingError("no value for variable '" + p.ring()->name(v) + "'");
  }
  return evaluate(p, pt);
}

}  // namespace lmlab
