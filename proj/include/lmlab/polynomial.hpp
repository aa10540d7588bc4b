// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "lmlab/ring.hpp"

namespace lmlab {

/// Sparse polynomial over the rationals. Terms are kept in a flat exponent
/// array (one row of nvars exponents per term) sorted strictly descending in
/// the ring order; zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) {
      p.exps_.assign(p.n(), 0);
      p.coeffs_.push_back(c);
    }
    return p;
  }
  static Polynomial variable(RingPtr ring, std::size_t index) {
    Polynomial p(std::move(ring));
    if (index >= p.n()) throw RingError("variable index out of range");
    p.exps_.assign(p.n(), 0);
    p.exps_[index] = 1;
    p.coeffs_.emplace_back(1);
    return p;
  }
  static Polynomial variable(RingPtr ring, std::string_view name) {
    auto idx = ring->index(name);
    return variable(std::move(ring), idx);
  }
  static Polynomial monomial(RingPtr ring, std::span<const Exponent> exps, const Rational& c) {
    Polynomial p(std::move(ring));
    if (exps.size() != p.n()) throw RingError("exponent vector has wrong length");
    if (c != 0) {
      p.exps_.assign(exps.begin(), exps.end());
      p.coeffs_.push_back(c);
    }
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const {
    return is_zero() || (size() == 1 && std::all_of(exps_.begin(), exps_.end(),
                                                    [](Exponent e) { return e == 0; }));
  }
  /// Nonzero constant.
  bool is_unit() const { return !is_zero() && is_constant(); }

  const Exponent* exps(std::size_t term) const { return exps_.data() + term * n(); }
  std::span<const Exponent> exponents(std::size_t term) const { return {exps(term), n()}; }
  const Rational& coeff(std::size_t term) const { return coeffs_[term]; }
  const Exponent* lead_exps() const { return exps(0); }
  const Rational& lead_coeff() const { return coeffs_.front(); }

  unsigned term_degree(std::size_t term) const {
    const Exponent* e = exps(term);
    return std::accumulate(e, e + n(), 0u);
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (std::size_t t = 0; t < size(); ++t) d = std::max(d, term_degree(t));
    return d;
  }
  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (std::size_t t = 0; t < size(); ++t) d = std::max<unsigned>(d, exps(t)[var]);
    return d;
  }
  bool uses(std::size_t var) const { return degree_in(var) > 0; }
  /// Constant coefficient (zero when absent).
  Rational constant_term() const {
    if (!is_zero() && term_degree(size() - 1) == 0) return coeffs_.back();
    return 0;
  }

  Polynomial monic() const {
    if (is_zero() || lead_coeff() == 1) return *this;
    return *this * Rational(1 / lead_coeff());
  }

  /// Scalar multiple with integer coefficients of gcd 1 and a positive
  /// leading coefficient. Generates the same ideal as *this.
  Polynomial primitive() const {
    if (is_zero()) return *this;
    Integer l = 1, g = 0;
    for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : coeffs_) {
      Integer num = c.get_num() * (l / c.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    Rational s(l, g);
    s.canonicalize();
    if (lead_coeff() < 0) s = -s;
    return *this * s;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator*(const Polynomial& p, const Rational& c) {
    if (c == 0) return Polynomial(p.ring_);
    Polynomial r = p;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    Polynomial acc(a.ring_);
    // one sorted row per term of the smaller factor, summed pairwise
    std::vector<Polynomial> rows;
    rows.reserve(small.size());
    for (std::size_t t = 0; t < small.size(); ++t)
      rows.push_back(large.mul_term(small.exps(t), small.coeff(t)));
    while (rows.size() > 1) {
      std::vector<Polynomial> next;
      next.reserve((rows.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(rows[i] + rows[i + 1]);
      if (rows.size() % 2) next.push_back(std::move(rows.back()));
      rows = std::move(next);
    }
    return rows.empty() ? acc : std::move(rows.front());
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(ring_, 1), base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  /// c * x^mono * (*this); the ring order is multiplicative so no resort.
  Polynomial mul_term(const Exponent* mono, const Rational& c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    const std::size_t nv = n();
    r.exps_.resize(exps_.size());
    r.coeffs_.reserve(size());
    for (std::size_t t = 0; t < size(); ++t) {
      for (std::size_t v = 0; v < nv; ++v) r.exps_[t * nv + v] = exps_[t * nv + v] + mono[v];
      r.coeffs_.push_back(coeffs_[t] * c);
    }
    return r;
  }

  /// this[from..] + c * x^mono * g[g_from..], by a single merge.
  Polynomial add_scaled(const Rational& c, const Exponent* mono, const Polynomial& g,
                        std::size_t from = 0, std::size_t g_from = 0) const {
    check_ring(g);
    const std::size_t nv = n();
    Polynomial r(ring_);
    r.exps_.reserve(exps_.size() + g.exps_.size());
    r.coeffs_.reserve(size() + g.size());
    std::vector<Exponent> buf(nv);
    std::size_t i = from, j = g_from;
    auto load = [&](std::size_t t) {
      const Exponent* e = g.exps(t);
      for (std::size_t v = 0; v < nv; ++v) buf[v] = e[v] + mono[v];
    };
    if (j < g.size()) load(j);
    while (i < size() || j < g.size()) {
      int cmp = i >= size() ? -1 : j >= g.size() ? 1 : ring_->compare(exps(i), buf.data());
      if (cmp > 0) {
        r.push(exps(i), coeffs_[i]);
        ++i;
      } else if (cmp < 0) {
        r.push(buf.data(), c * g.coeffs_[j]);
        if (++j < g.size()) load(j);
      } else {
        Rational s = coeffs_[i] + c * g.coeffs_[j];
        if (s != 0) r.push(buf.data(), std::move(s));
        ++i;
        if (++j < g.size()) load(j);
      }
    }
    return r;
  }

  /// Formal partial derivative.
  Polynomial derivative(std::size_t var) const {
    Polynomial r(ring_);
    for (std::size_t t = 0; t < size(); ++t) {
      Exponent e = exps(t)[var];
      if (!e) continue;
      r.push(exps(t), coeffs_[t] * e);
      r.exps_[(r.size() - 1) * n() + var] = e - 1;
    }
    return r;  // decrementing one exponent keeps distinct terms ordered
  }

  /// Leading term with coefficient dropped; remaining tail.
  Polynomial tail() const {
    Polynomial r(ring_);
    if (size() <= 1) return r;
    r.exps_.assign(exps_.begin() + n(), exps_.end());
    r.coeffs_.assign(coeffs_.begin() + 1, coeffs_.end());
    return r;
  }
  Polynomial lead_term() const {
    if (is_zero()) return *this;
    return monomial(ring_, exponents(0), lead_coeff());
  }

  /// Same polynomial viewed in another ring; variables are matched by name.
  Polynomial in_ring(const RingPtr& target) const {
    if (target.get() == ring_.get()) return *this;
    std::vector<std::size_t> where(n());
    for (std::size_t v = 0; v < n(); ++v) {
      auto idx = target->find(ring_->name(v));
      if (idx) {
        where[v] = *idx;
      } else {
        if (degree_in(v) > 0)
          throw RingError("variable '" + ring_->name(v) + "' missing from target ring");
        where[v] = SIZE_MAX;
      }
    }
    std::vector<Exponent> exps(size() * target->nvars(), 0);
    for (std::size_t t = 0; t < size(); ++t)
      for (std::size_t v = 0; v < n(); ++v)
        if (where[v] != SIZE_MAX) exps[t * target->nvars() + where[v]] = this->exps(t)[v];
    return from_terms(target, std::move(exps), coeffs_);
  }

  /// Builds a polynomial from unsorted (possibly repeated) terms.
  static Polynomial from_terms(RingPtr ring, std::vector<Exponent> exps, std::vector<Rational> coeffs) {
    const std::size_t nv = ring->nvars();
    if (exps.size() != coeffs.size() * nv) throw RingError("term data has wrong shape");
    std::vector<std::size_t> idx(coeffs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return ring->compare(exps.data() + a * nv, exps.data() + b * nv) > 0;
    });
    Polynomial r(ring);
    r.exps_.reserve(exps.size());
    r.coeffs_.reserve(coeffs.size());
    for (std::size_t k = 0; k < idx.size();) {
      Rational s = coeffs[idx[k]];
      std::size_t m = k + 1;
      while (m < idx.size() &&
             ring->compare(exps.data() + idx[m] * nv, exps.data() + idx[k] * nv) == 0)
        s += coeffs[idx[m++]];
      if (s != 0) r.push(exps.data() + idx[k] * nv, std::move(s));
      k = m;
    }
    return r;
  }

  /// Appends a term that is smaller than every stored term (unchecked).
  void append_term(const Exponent* e, Rational c) { push(e, std::move(c)); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (!a.ring_ || !b.ring_ || !a.ring_->same_as(*b.ring_)) return false;
    return a.exps_ == b.exps_ && a.coeffs_ == b.coeffs_;
  }

  /// Orders polynomials by their term sequences (leading terms first);
  /// used to sort generator lists deterministically.
  static int compare_terms(const Polynomial& a, const Polynomial& b) {
    const std::size_t k = std::min(a.size(), b.size());
    for (std::size_t t = 0; t < k; ++t) {
      if (int c = a.ring_->compare(a.exps(t), b.exps(t))) return c;
      if (a.coeffs_[t] != b.coeffs_[t]) return a.coeffs_[t] > b.coeffs_[t] ? 1 : -1;
    }
    return a.size() == b.size() ? 0 : (a.size() > b.size() ? 1 : -1);
  }

 private:
  std::size_t n() const { return ring_ ? ring_->nvars() : 0; }

  void push(const Exponent* e, Rational c) {
    exps_.insert(exps_.end(), e, e + n());
    coeffs_.push_back(std::move(c));
  }

  void check_ring(const Polynomial& o) const {
    if (!ring_ || !o.ring_) throw RingError("polynomial has no ring");
    if (ring_.get() != o.ring_.get()) require_same_ring(*ring_, *o.ring_);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    if (!a.ring_) return subtract ? -b : b;
    if (!b.ring_) return a;
    a.check_ring(b);
    Polynomial r(a.ring_);
    r.exps_.reserve(a.exps_.size() + b.exps_.size());
    r.coeffs_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int cmp = i >= a.size() ? -1 : j >= b.size() ? 1 : a.ring_->compare(a.exps(i), b.exps(j));
      if (cmp > 0) {
        r.push(a.exps(i), a.coeffs_[i]);
        ++i;
      } else if (cmp < 0) {
        r.push(b.exps(j), subtract ? Rational(-b.coeffs_[j]) : b.coeffs_[j]);
        ++j;
      } else {
        Rational s = subtract ? Rational(a.coeffs_[i] - b.coeffs_[j]) : Rational(a.coeffs_[i] + b.coeffs_[j]);
        if (s != 0) r.push(a.exps(i), std::move(s));
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Exponent> exps_;
  std::vector<Rational> coeffs_;
};

// Monomial helpers on raw exponent rows.
namespace mono {

inline bool divides(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v)
    if (a[v] > b[v]) return false;
  return true;
}

inline bool coprime(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t v = 0; v < n; ++v)
    if (a[v] && b[v]) return false;
  return true;
}

inline std::vector<Exponent> lcm(const Exponent* a, const Exponent* b, std::size_t n) {
  std::vector<Exponent> r(n);
  for (std::size_t v = 0; v < n; ++v) r[v] = std::max(a[v], b[v]);
  return r;
}

inline unsigned degree(const Exponent* a, std::size_t n) { return std::accumulate(a, a + n, 0u); }

/// Bit v%64 set when variable v occurs; a cheap necessary test for divisibility.
inline std::uint64_t support_mask(const Exponent* a, std::size_t n) {
  std::uint64_t m = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (a[v]) m |= std::uint64_t{1} << (v % 64);
  return m;
}

}  // namespace mono

}  // namespace lmlab
