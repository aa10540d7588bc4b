// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "lmlab/polynomial.hpp"

namespace lmlab {

/// Dense row-major matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring)) {}

  /// Integer matrix lifted to constants.
  static PolyMatrix constant(RingPtr ring, const std::vector<std::vector<int>>& m) {
    PolyMatrix r(ring, m.size(), m.empty() ? 0 : m.front().size());
    for (std::size_t i = 0; i < r.rows_; ++i)
      for (std::size_t j = 0; j < r.cols_; ++j) r(i, j) = Polynomial::constant(ring, m[i].at(j));
    return r;
  }
  /// rows x cols matrix of variables named prefix_i_j (1-based).
  static PolyMatrix generic(RingPtr ring, const std::string& prefix, std::size_t rows, std::size_t cols) {
    PolyMatrix r(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        r(i, j) = Polynomial::variable(ring, prefix + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    return r;
  }
  /// Unit antidiagonal matrix of size m.
  static PolyMatrix antidiagonal(RingPtr ring, std::size_t m) {
    PolyMatrix r(ring, m, m);
    for (std::size_t i = 0; i < m; ++i) r(i, m - 1 - i) = Polynomial::constant(ring, 1);
    return r;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  PolyMatrix transpose() const {
    PolyMatrix r(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Submatrix on the given (0-based) rows and columns.
  PolyMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    PolyMatrix r(ring_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

  Polynomial trace() const {
    Polynomial t(ring_);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw RingError("matrix shape mismatch in product");
    PolyMatrix r(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Polynomial& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) { return a.zip(b, std::plus<>{}); }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a.zip(b, std::minus<>{}); }
  friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& m) {
    PolyMatrix r = m;
    for (auto& e : r.entries_) e = c * e;
    return r;
  }
  friend PolyMatrix operator*(const Rational& c, const PolyMatrix& m) {
    PolyMatrix r = m;
    for (auto& e : r.entries_) e = e * c;
    return r;
  }

 private:
  template <class Op>
  PolyMatrix zip(const PolyMatrix& b, Op op) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw RingError("matrix shape mismatch");
    PolyMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = op(entries_[k], b.entries_[k]);
    return r;
  }

  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> entries_;
};

namespace detail {

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Laplace expansion along the first selected row.
inline Polynomial det_of(const PolyMatrix& m, const std::vector<std::size_t>& rs,
                         const std::vector<std::size_t>& cs) {
  if (rs.size() == 1) return m(rs[0], cs[0]);
  if (rs.size() == 2)
    return m(rs[0], cs[0]) * m(rs[1], cs[1]) - m(rs[0], cs[1]) * m(rs[1], cs[0]);
  std::vector<std::size_t> sub_rows(rs.begin() + 1, rs.end());
  Polynomial d(m.ring());
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Polynomial& e = m(rs[0], cs[j]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (k != j) sub_cols.push_back(cs[k]);
    Polynomial term = e * det_of(m, sub_rows, sub_cols);
    d = (j % 2) ? d - term : d + term;
  }
  return d;
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw RingError("determinant of a non-square matrix");
  if (m.rows() == 0) return Polynomial::constant(m.ring(), 1);
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return detail::det_of(m, idx, idx);
}

/// All k x k minors; row subsets in lexicographic order, then column subsets
/// in lexicographic order. Zero minors are kept so positions stay meaningful.
inline std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k) {
  if (k == 0 || k > std::max(m.rows(), m.cols()))
    throw RingError("minor size " + std::to_string(k) + " out of range");
  std::vector<Polynomial> out;
  if (k > std::min(m.rows(), m.cols())) return out;
  std::vector<std::vector<std::size_t>> rsets, csets;
  detail::combinations(m.rows(), k, rsets);
  detail::combinations(m.cols(), k, csets);
  out.reserve(rsets.size() * csets.size());
  for (const auto& rs : rsets)
    for (const auto& cs : csets) out.push_back(detail::det_of(m, rs, cs));
  return out;
}

/// Entry (i, j) is d polys[i] / d vars[j].
inline PolyMatrix jacobian(const std::vector<Polynomial>& polys, const std::vector<std::string>& vars,
                           const RingPtr& ring) {
  PolyMatrix j(ring, polys.size(), vars.size());
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(ring->index(v));
  for (std::size_t r = 0; r < polys.size(); ++r) {
    Polynomial p = polys[r].in_ring(ring);
    for (std::size_t c = 0; c < idx.size(); ++c) j(r, c) = p.derivative(idx[c]);
  }
  return j;
}

}  // namespace lmlab
