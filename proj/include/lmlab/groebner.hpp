// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <tuple>

#include "lmlab/polynomial.hpp"

namespace lmlab {

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("time budget exhausted") {}
};

using Clock = std::chrono::steady_clock;

namespace detail {
inline thread_local std::optional<Clock::time_point> tl_deadline;
}

/// Installs a per-thread deadline for every Gröbner computation started in
/// its lifetime. Nested scopes keep the earlier of the two deadlines.
class DeadlineScope {
 public:
  explicit DeadlineScope(std::optional<double> seconds) : saved_(detail::tl_deadline) {
    if (!seconds) return;
    auto d = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*seconds));
    if (!detail::tl_deadline || d < *detail::tl_deadline) detail::tl_deadline = d;
  }
  ~DeadlineScope() { detail::tl_deadline = saved_; }
  DeadlineScope(const DeadlineScope&) = delete;
  DeadlineScope& operator=(const DeadlineScope&) = delete;

 private:
  std::optional<Clock::time_point> saved_;
};

inline void check_deadline() {
  if (detail::tl_deadline && Clock::now() > *detail::tl_deadline) throw TimeoutError();
}

/// p = sum cofactors[i] * basis[i] + residue.
struct MembershipCertificate {
  std::vector<Polynomial> cofactors;
  Polynomial residue;

  bool certified() const { return residue.is_zero(); }

  /// Re-checks the identity by plain polynomial arithmetic.
  bool verify(const Polynomial& p, const std::vector<Polynomial>& basis) const {
    if (cofactors.size() != basis.size()) return false;
    Polynomial acc = residue.ring() ? residue : Polynomial(p.ring());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!cofactors[i].is_zero()) acc += cofactors[i] * basis[i];
    return acc == p;
  }
};

struct Reduction {
  Polynomial normal_form;
  MembershipCertificate cert;
};

namespace detail {

struct ReducerIndex {
  std::vector<const Polynomial*> polys;
  std::vector<std::uint64_t> masks;
  std::size_t nv = 0;

  explicit ReducerIndex(std::size_t nvars) : nv(nvars) {}
  void add(const Polynomial* p) {
    polys.push_back(p);
    masks.push_back(mono::support_mask(p->lead_exps(), nv));
  }
  // first element whose leading monomial divides e, or npos
  std::size_t find(const Exponent* e) const {
    std::uint64_t m = mono::support_mask(e, nv);
    for (std::size_t k = 0; k < polys.size(); ++k)
      if ((masks[k] & ~m) == 0 && mono::divides(polys[k]->lead_exps(), e, nv)) return k;
    return SIZE_MAX;
  }
};

inline Polynomial full_reduce(const Polynomial& p, const ReducerIndex& idx,
                              std::vector<Polynomial>* cofactors) {
  const std::size_t nv = idx.nv;
  Polynomial work = p, rem(p.ring());
  std::size_t off = 0, steps = 0;
  std::vector<Exponent> m(nv);
  while (off < work.size()) {
    if ((++steps & 63) == 0) check_deadline();
    const Exponent* lt = work.exps(off);
    std::size_t k = idx.find(lt);
    if (k == SIZE_MAX) {
      rem.append_term(lt, work.coeff(off));
      ++off;
      continue;
    }
    const Polynomial& g = *idx.polys[k];
    const Exponent* lg = g.lead_exps();
    for (std::size_t v = 0; v < nv; ++v) m[v] = lt[v] - lg[v];
    Rational c = work.coeff(off) / g.lead_coeff();
    if (cofactors) (*cofactors)[k].append_term(m.data(), c);
    work = work.add_scaled(-c, m.data(), g, off + 1, 1);
    off = 0;
  }
  return rem;
}

}  // namespace detail

/// Full reduction of p by basis (any generating list); the remainder has no
/// term divisible by a leading term of the basis.
inline Reduction reduce(const Polynomial& p, const std::vector<Polynomial>& basis, bool with_cofactors = true) {
  for (const auto& g : basis)
    if (!g.ring()->same_as(*p.ring())) throw RingError("ring mismatch in reduce");
  detail::ReducerIndex idx(p.ring()->nvars());
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!basis[i].is_zero()) {
      idx.add(&basis[i]);
      where.push_back(i);
    }
  Reduction r;
  std::vector<Polynomial> cof;
  if (with_cofactors) cof.assign(where.size(), Polynomial(p.ring()));
  r.normal_form = detail::full_reduce(p, idx, with_cofactors ? &cof : nullptr);
  r.cert.residue = r.normal_form;
  if (with_cofactors) {
    r.cert.cofactors.assign(basis.size(), Polynomial(p.ring()));
    for (std::size_t k = 0; k < where.size(); ++k) r.cert.cofactors[where[k]] = std::move(cof[k]);
  }
  return r;
}

inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
  return reduce(p, basis, false).normal_form;
}

struct GroebnerBasis {
  std::vector<Polynomial> basis;  // reduced, monic, ascending by leading term
  bool partial = false;           // S-pairs above the degree bound were skipped
};

/// Buchberger's algorithm with the Gebauer-Möller criteria and sugar
/// selection. Pairs are taken by (sugar, i, j).
inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const RingPtr& ring,
                                std::optional<unsigned> degree_bound = std::nullopt) {
  const std::size_t nv = ring->nvars();
  std::vector<Polynomial> polys;
  std::vector<unsigned> sugar;
  std::vector<std::vector<Exponent>> leads;
  std::vector<std::size_t> active;

  struct Pair {
    unsigned sugar;
    std::size_t i, j;
    std::vector<Exponent> lcm;
    bool operator<(const Pair& o) const { return std::tie(sugar, i, j) < std::tie(o.sugar, o.i, o.j); }
  };
  std::set<Pair> pairs;
  bool partial = false;

  auto lcm_of = [&](std::size_t a, std::size_t b) { return mono::lcm(leads[a].data(), leads[b].data(), nv); };
  auto pair_sugar = [&](std::size_t a, std::size_t b, const std::vector<Exponent>& l) {
    unsigned dl = mono::degree(l.data(), nv);
    unsigned sa = sugar[a] - mono::degree(leads[a].data(), nv);
    unsigned sb = sugar[b] - mono::degree(leads[b].data(), nv);
    return std::max(sa, sb) + dl;
  };

  auto update = [&](std::size_t h) {
    const Exponent* lh = leads[h].data();
    struct Cand {
      std::size_t g;
      std::vector<Exponent> lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (auto g : active) cands.push_back({g, lcm_of(h, g), mono::coprime(lh, leads[g].data(), nv)});
    // chain criterion among the new pairs
    std::vector<bool> keep(cands.size(), true);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].coprime) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !keep[b]) continue;
        if (mono::divides(cands[b].lcm.data(), cands[a].lcm.data(), nv) &&
            (cands[b].lcm != cands[a].lcm || b < a)) {
          keep[a] = false;
          break;
        }
      }
    }
    // B_k criterion on the old pairs
    for (auto it = pairs.begin(); it != pairs.end();) {
      const auto& l = it->lcm;
      if (mono::divides(lh, l.data(), nv) && lcm_of(it->i, h) != l && lcm_of(it->j, h) != l)
        it = pairs.erase(it);
      else
        ++it;
    }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!keep[a] || cands[a].coprime) continue;
      std::size_t g = cands[a].g;
      pairs.insert({pair_sugar(g, h, cands[a].lcm), std::min(g, h), std::max(g, h), std::move(cands[a].lcm)});
    }
    std::vector<std::size_t> next;
    for (auto g : active)
      if (!mono::divides(lh, leads[g].data(), nv)) next.push_back(g);
    next.push_back(h);
    active = std::move(next);
  };

  auto reducers = [&] {
    detail::ReducerIndex idx(nv);
    for (auto g : active) idx.add(&polys[g]);
    return idx;
  };
  auto unit = [&] { return GroebnerBasis{{Polynomial::constant(ring, 1)}, false}; };

  // seed with the generators, cheapest first
  std::vector<Polynomial> input;
  for (const auto& g : gens)
    if (!g.is_zero()) input.push_back(g.in_ring(ring));
  std::stable_sort(input.begin(), input.end(), [](const Polynomial& a, const Polynomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return Polynomial::compare_terms(a, b) < 0;
  });
  for (const auto& f : input) {
    check_deadline();
    Polynomial h = detail::full_reduce(f, reducers(), nullptr);
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit();
    polys.push_back(h.monic());
    sugar.push_back(f.total_degree());
    leads.emplace_back(polys.back().lead_exps(), polys.back().lead_exps() + nv);
    update(polys.size() - 1);
  }

  while (!pairs.empty()) {
    check_deadline();
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    if (degree_bound && mono::degree(p.lcm.data(), nv) > *degree_bound) {
      partial = true;
      continue;
    }
    const Polynomial& gi = polys[p.i];
    const Polynomial& gj = polys[p.j];
    std::vector<Exponent> mi(nv), mj(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      mi[v] = p.lcm[v] - leads[p.i][v];
      mj[v] = p.lcm[v] - leads[p.j][v];
    }
    Polynomial s = gi.mul_term(mi.data(), 1).add_scaled(-1, mj.data(), gj, 1, 1);
    Polynomial h = detail::full_reduce(s, reducers(), nullptr);
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit();
    polys.push_back(h.monic());
    sugar.push_back(p.sugar);
    leads.emplace_back(polys.back().lead_exps(), polys.back().lead_exps() + nv);
    update(polys.size() - 1);
  }

  // interreduce the minimal basis
  std::vector<Polynomial> minimal;
  for (auto g : active) minimal.push_back(polys[g]);
  std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.lead_exps(), b.lead_exps()) < 0;
  });
  GroebnerBasis out;
  out.partial = partial;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    detail::ReducerIndex idx(nv);
    for (std::size_t m = 0; m < minimal.size(); ++m)
      if (m != k) idx.add(&minimal[m]);
    out.basis.push_back(minimal[k].lead_term() + detail::full_reduce(minimal[k].tail(), idx, nullptr));
  }
  return out;
}

}  // namespace lmlab
