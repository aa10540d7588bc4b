// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "lmlab/matrix.hpp"
#include "lmlab/parse.hpp"

namespace lmlab {

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Split normal form of a vertex lattice of rank d and type delta. Indices
/// are 1-based. Delta lists the N-basis positions (Gram block S2), DeltaC the
/// M-basis positions (Gram block S1); S = S1 + pi*S2.
struct LatticeNormalForm {
  int d = 0, delta = 0;
  int case_tag = 0;  // 1: d, delta even; 2: d even, delta odd; 3: d odd, delta even; 4: both odd
  int n = 0, r = 0, r_prime = 0;
  std::vector<int> Delta, DeltaC;
  std::vector<std::vector<int>> S1, S2;  // d x d, 0-based storage

  bool same_parity() const { return d % 2 == delta % 2; }
  int delta_star() const { return std::min(delta, d - delta); }
  int incl_flip(int i) const { return d + 1 - i; }
  bool in_delta(int i) const { return std::find(Delta.begin(), Delta.end(), i) != Delta.end(); }

  /// 1-based position of i inside Delta (resp. DeltaC); 0 when absent.
  int pos_in_delta(int i) const { return pos(Delta, i); }
  int pos_in_deltac(int i) const { return pos(DeltaC, i); }

  /// The basis vector paired with e_i by the Gram matrix.
  int partner(int i) const {
    const auto& S = in_delta(i) ? S2 : S1;
    for (int j = 1; j <= d; ++j)
      if (S[i - 1][j - 1]) return j;
    return 0;
  }

  std::string label() const { return "(" + std::to_string(d) + "," + std::to_string(delta) + ")"; }

 private:
  static int pos(const std::vector<int>& v, int i) {
    auto it = std::find(v.begin(), v.end(), i);
    return it == v.end() ? 0 : static_cast<int>(it - v.begin()) + 1;
  }
};

inline void check_instance(int d, int delta) {
  if (d < 5) throw LatticeError("d >= 5 required (got d=" + std::to_string(d) + ")");
  if (delta < 1) throw LatticeError("delta >= 1 required (delta = 0 is the hyperspecial case)");
  if (2 * delta > d)
    throw LatticeError("delta <= d/2 required; for delta > d/2 replace the form by a multiple, which swaps "
                       "the lattice with its dual and delta with d - delta");
}

inline LatticeNormalForm normal_form(int d, int delta) {
  check_instance(d, delta);
  LatticeNormalForm nf;
  nf.d = d;
  nf.delta = delta;
  nf.n = d / 2;
  nf.r = delta / 2;
  const int n = nf.n, r = nf.r;
  const bool d_even = d % 2 == 0, delta_even = delta % 2 == 0;
  nf.case_tag = d_even ? (delta_even ? 1 : 2) : (delta_even ? 3 : 4);
  nf.r_prime = delta_even ? r : r + 1;

  std::vector<bool> inN(d + 1, false);
  auto mark = [&](int lo, int hi) {
    for (int i = lo; i <= hi; ++i) inN[i] = true;
  };
  switch (nf.case_tag) {
    case 1: mark(n - r + 1, n + r); break;
    case 2: mark(n - r, n); mark(n + 2, n + r + 1); break;
    case 3: mark(n - r + 1, n); mark(n + 2, n + r + 1); break;
    case 4: mark(n - r + 1, n + r + 1); break;
  }
  for (int i = 1; i <= d; ++i) (inN[i] ? nf.Delta : nf.DeltaC).push_back(i);

  nf.S1.assign(d, std::vector<int>(d, 0));
  nf.S2.assign(d, std::vector<int>(d, 0));
  for (int i = 1; i <= d; ++i) {
    int j = d + 1 - i;
    // case (2): <e_n, e_n> = pi and <e_{n+1}, e_{n+1}> = 1 replace the flip pairing n <-> n+1
    if (nf.case_tag == 2 && (i == n || i == n + 1)) j = i;
    (inN[i] ? nf.S2 : nf.S1)[i - 1][j - 1] = 1;
  }
  return nf;
}

/// Gram matrix S = S1 + pi*S2 over a ring containing pi.
inline PolyMatrix gram_matrix(const LatticeNormalForm& nf, const RingPtr& ring) {
  PolyMatrix s1 = PolyMatrix::constant(ring, nf.S1), s2 = PolyMatrix::constant(ring, nf.S2);
  return s1 + Polynomial::variable(ring, kBaseVariable) * s2;
}

/// 1/2 x^t S x restricted to `indices`, with x_i the variable name(i).
template <class NameFn>
Polynomial half_form(const std::vector<std::vector<int>>& S, const std::vector<int>& indices, const RingPtr& ring,
                     NameFn name) {
  Polynomial q(ring);
  for (int a : indices)
    for (int b : indices)
      if (S[a - 1][b - 1])
        q += Polynomial::variable(ring, name(a)) * Polynomial::variable(ring, name(b)) * Rational(S[a - 1][b - 1], 2);
  return q;
}

struct QuadForms {
  Polynomial Q1;  // on DeltaC, from S1
  Polynomial Q2;  // on Delta, from S2
};

inline QuadForms quad_forms(const LatticeNormalForm& nf, const RingPtr& ring, const std::string& prefix = "x") {
  auto name = [&](int i) { return prefix + "_" + std::to_string(i); };
  for (int i = 1; i <= nf.d; ++i)
    if (!ring->has(name(i))) throw RingError("ring lacks variable '" + name(i) + "'");
  return {half_form(nf.S1, nf.DeltaC, ring, name), half_form(nf.S2, nf.Delta, ring, name)};
}

/// Integer determinant of the Gram block of S on `indices` (cofactor expansion).
inline long block_determinant(const std::vector<std::vector<int>>& S, const std::vector<int>& indices) {
  auto r = PolyRing::make({"pi"});
  std::vector<std::vector<int>> m;
  for (int a : indices) {
    m.emplace_back();
    for (int b : indices) m.back().push_back(S[a - 1][b - 1]);
  }
  auto det = determinant(PolyMatrix::constant(r, m));
  return det.is_zero() ? 0 : det.lead_coeff().get_num().get_si();
}

}  // namespace lmlab
