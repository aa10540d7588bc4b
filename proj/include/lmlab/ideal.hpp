// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bitset>
#include <mutex>
#include <set>

#include "lmlab/groebner.hpp"
#include "lmlab/ring_map.hpp"

namespace lmlab {

/// Generator list in a ring; the reduced Gröbner basis for the ring's order
/// is computed on first use and shared between copies.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, const std::vector<Polynomial>& gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (const auto& g : gens)
      if (!g.is_zero()) gens_.push_back(g.in_ring(ring_));
  }
  Ideal(RingPtr ring, std::initializer_list<std::string_view> gens) : Ideal(ring, parse_all(ring, gens)) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  /// Reduced Gröbner basis in the ring order. Throws TimeoutError.
  const std::vector<Polynomial>& groebner() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (!cache_->gb) cache_->gb = buchberger(gens_, ring_).basis;
    return *cache_->gb;
  }
  bool has_groebner() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->gb.has_value();
  }

  bool is_unit() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb.front().is_unit();
  }

  /// Same generators viewed in another ring (variables matched by name).
  Ideal in_ring(const RingPtr& target) const { return Ideal(target, gens_); }
  Ideal with_order(MonomialOrder order) const { return in_ring(ring_->with_order(std::move(order))); }

  Ideal plus(const std::vector<Polynomial>& extra) const {
    auto g = gens_;
    for (const auto& e : extra) g.push_back(e.in_ring(ring_));
    return Ideal(ring_, g);
  }
  Ideal plus(const Ideal& other) const { return plus(other.generators()); }

 private:
  static std::vector<Polynomial> parse_all(const RingPtr& ring, std::initializer_list<std::string_view> texts) {
    std::vector<Polynomial> out;
    for (auto t : texts) out.push_back(parse_poly(t, ring));
    return out;
  }

  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Polynomial>> gb;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct Membership {
  bool member = false;
  MembershipCertificate cert;
  std::vector<Polynomial> basis;  // the Gröbner basis the certificate refers to
};

inline Membership ideal_member(const Polynomial& p, const Ideal& I) {
  Membership m;
  m.basis = I.groebner();
  auto r = reduce(p.in_ring(I.ring()), m.basis);
  m.member = r.normal_form.is_zero();
  m.cert = std::move(r.cert);
  return m;
}

inline bool contains(const Ideal& I, const Polynomial& p) {
  return normal_form(p.in_ring(I.ring()), I.groebner()).is_zero();
}

/// J ⊆ I.
inline bool contains(const Ideal& I, const Ideal& J) {
  const auto& gb = I.groebner();
  for (const auto& g : J.generators())
    if (!normal_form(g.in_ring(I.ring()), gb).is_zero()) return false;
  return true;
}

inline bool ideal_equal(const Ideal& I, const Ideal& J) {
  if (I.ring()->same_as(*J.ring())) return I.groebner() == J.groebner();
  return contains(I, J) && contains(J, I);
}

/// Subring listing `keep` variables, grevlex.
inline RingPtr subring(const RingPtr& ring, const std::set<std::string>& drop) {
  std::vector<std::string> names;
  for (const auto& n : ring->names())
    if (!drop.count(n)) names.push_back(n);
  MonomialOrder order = ring->order().kind == OrderKind::block ? MonomialOrder::grevlex() : ring->order();
  return PolyRing::make(std::move(names), order);
}

/// I ∩ k[vars not in `vars`], as an ideal of the smaller ring.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars) {
  for (const auto& v : vars) I.ring()->index(v);
  auto block = I.ring()->with_order(MonomialOrder::eliminating(vars));
  auto gb = buchberger(I.generators(), block).basis;
  std::set<std::string> drop(vars.begin(), vars.end());
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(block->index(v));
  auto sub = subring(I.ring(), drop);
  std::vector<Polynomial> kept;
  for (const auto& g : gb)
    if (std::none_of(idx.begin(), idx.end(), [&](std::size_t v) { return g.uses(v); })) kept.push_back(g.in_ring(sub));
  return Ideal(sub, kept);
}

inline Ideal intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(*I.ring(), *J.ring());
  const auto& R = I.ring();
  std::string t = R->fresh_name("t");
  auto Rt = R->extended({t});
  Polynomial tv = Polynomial::variable(Rt, t);
  Polynomial one_minus_t = Polynomial::constant(Rt, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(tv * g.in_ring(Rt));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.in_ring(Rt));
  Ideal e = eliminate(Ideal(Rt, gens), {t});
  return e.in_ring(R);
}

/// Exact quotient p / f; throws when f does not divide p.
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& f) {
  auto r = reduce(p, {f});
  if (!r.normal_form.is_zero()) throw RingError("inexact polynomial division");
  return r.cert.cofactors.front();
}

/// (I : f) = { g : g f ∈ I }.
inline Ideal quotient(const Ideal& I, const Polynomial& f) {
  Polynomial ff = f.in_ring(I.ring());
  if (ff.is_zero()) return Ideal(I.ring(), {Polynomial::constant(I.ring(), 1)});
  Ideal cap = intersect(I, Ideal(I.ring(), {ff}));
  std::vector<Polynomial> gens;
  for (const auto& g : cap.groebner()) gens.push_back(exact_divide(g, ff));
  return Ideal(I.ring(), gens);
}

/// (I : f^∞) by iterated quotients.
inline Ideal saturate(const Ideal& I, const Polynomial& f) {
  Ideal cur = I;
  for (;;) {
    Ideal next = quotient(cur, f);
    if (contains(cur, next)) return cur;
    cur = next;
  }
}

/// p ∈ rad(I) iff 1 ∈ I + (1 - t p).
inline bool radical_member(const Polynomial& p, const Ideal& I) {
  const auto& R = I.ring();
  std::string t = R->fresh_name("t");
  auto Rt = R->extended({t});
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.in_ring(Rt));
  gens.push_back(Polynomial::constant(Rt, 1) - Polynomial::variable(Rt, t) * p.in_ring(Rt));
  return Ideal(Rt, gens).is_unit();
}

/// Dimension of V(I): the largest set of variables containing no
/// leading-monomial support of the Gröbner basis. -1 for the unit ideal.
inline int krull_dim(const Ideal& I) {
  constexpr std::size_t kMax = 256;
  const std::size_t nv = I.ring()->nvars();
  if (nv > kMax) throw RingError("krull_dim supports at most 256 variables");
  using Bits = std::bitset<kMax>;
  const auto& gb = I.groebner();
  std::vector<Bits> supports;
  for (const auto& g : gb) {
    if (g.is_unit()) return -1;
    Bits b;
    for (std::size_t v = 0; v < nv; ++v)
      if (g.lead_exps()[v]) b.set(v);
    supports.push_back(b);
  }
  // keep inclusion-minimal supports
  std::vector<Bits> minimal;
  std::sort(supports.begin(), supports.end(), [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
  for (const auto& s : supports)
    if (std::none_of(minimal.begin(), minimal.end(), [&](const Bits& m) { return (m & ~s).none(); }))
      minimal.push_back(s);
  // minimum hitting set by branching on the first unhit support
  std::size_t best = nv;
  std::function<void(Bits, std::size_t)> search = [&](Bits hit, std::size_t size) {
    if (size >= best) return;
    const Bits* open = nullptr;
    for (const auto& m : minimal)
      if ((m & hit).none()) {
        open = &m;
        break;
      }
    if (!open) {
      best = size;
      return;
    }
    if (size + 1 >= best) return;
    for (std::size_t v = 0; v < nv; ++v)
      if ((*open)[v]) {
        Bits next = hit;
        next.set(v);
        search(next, size + 1);
      }
  };
  search(Bits{}, 0);
  return static_cast<int>(nv - best);
}

/// Result of removing variables that some generator expresses linearly.
struct Preelimination {
  Ideal ideal;                                             // in the smaller ring
  std::vector<std::pair<std::string, Polynomial>> solved;  // v = expression in the smaller ring
};

/// Repeatedly picks a generator c*v + q with c a nonzero constant and v not
/// occurring in q, and substitutes v := -q/c everywhere. Only variables in
/// `allowed` are eliminated (all when empty); pi is never eliminated.
inline Preelimination linear_preeliminate(const Ideal& I, const std::set<std::string>& allowed = {}) {
  const auto& R = I.ring();
  std::vector<Polynomial> gens = I.generators();
  std::vector<std::pair<std::size_t, Polynomial>> solved;  // in R
  std::vector<bool> gone(R->nvars(), false);
  auto eligible = [&](std::size_t v) {
    return !gone[v] && R->name(v) != kBaseVariable && (allowed.empty() || allowed.count(R->name(v)));
  };
  for (;;) {
    check_deadline();
    std::size_t pick_g = SIZE_MAX, pick_v = SIZE_MAX;
    for (std::size_t k = 0; k < gens.size() && pick_g == SIZE_MAX; ++k) {
      const Polynomial& g = gens[k];
      for (std::size_t t = 0; t < g.size() && pick_g == SIZE_MAX; ++t) {
        if (g.term_degree(t) != 1) continue;
        std::size_t v = std::find(g.exps(t), g.exps(t) + R->nvars(), Exponent{1}) - g.exps(t);
        if (!eligible(v) || g.degree_in(v) != 1) continue;
        // v must occur only in this linear term
        bool alone = true;
        for (std::size_t u = 0; u < g.size() && alone; ++u)
          if (u != t && g.exps(u)[v]) alone = false;
        if (alone) {
          pick_g = k;
          pick_v = v;
        }
      }
    }
    if (pick_g == SIZE_MAX) break;
    Polynomial g = gens[pick_g];
    Polynomial var = Polynomial::variable(R, pick_v);
    Rational c;
    for (std::size_t t = 0; t < g.size(); ++t)
      if (g.term_degree(t) == 1 && g.exps(t)[pick_v]) c = g.coeff(t);
    Polynomial value = (var * c - g) * Rational(1 / c);
    RingMap m = RingMap::identity_on_shared(R, R);
    m.set(R->name(pick_v), value);
    gens.erase(gens.begin() + pick_g);
    for (auto& h : gens)
      if (h.uses(pick_v)) h = m(h);
    for (auto& s : solved)
      if (s.second.uses(pick_v)) s.second = m(s.second);
    solved.emplace_back(pick_v, value);
    gone[pick_v] = true;
  }
  std::set<std::string> drop;
  for (const auto& s : solved) drop.insert(R->name(s.first));
  auto sub = subring(R, drop);
  Preelimination out;
  std::vector<Polynomial> rest;
  for (const auto& h : gens)
    if (!h.is_zero()) rest.push_back(h.in_ring(sub));
  out.ideal = Ideal(sub, rest);
  for (const auto& s : solved) out.solved.emplace_back(R->name(s.first), s.second.in_ring(sub));
  return out;
}

}  // namespace lmlab
