// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace lmlab {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponent = std::uint16_t;

/// Name of the distinguished base variable. It is always the smallest
/// variable of every monomial order, whatever its position in the listing.
inline constexpr std::string_view kBaseVariable = "pi";

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OrderKind { lex, grevlex, block };

/// lex | grevlex | block. A block order compares the `block` variables first
/// (graded reverse lexicographic among them) and breaks ties with grevlex on
/// the remaining variables.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<std::string> block;

  static MonomialOrder lex() { return {OrderKind::lex, {}}; }
  static MonomialOrder grevlex() { return {OrderKind::grevlex, {}}; }
  static MonomialOrder eliminating(std::vector<std::string> vars) {
    return {OrderKind::block, std::move(vars)};
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, MonomialOrder order)
      : names_(std::move(variables)), order_(std::move(order)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw RingError("empty variable name");
      if (!index_.emplace(names_[i], i).second)
        throw RingError("duplicate variable '" + names_[i] + "'");
    }
    // largest-to-smallest variable sequence; pi goes last
    std::vector<std::size_t> seq;
    std::optional<std::size_t> base;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == kBaseVariable)
        base = i;
      else
        seq.push_back(i);
    }
    if (base) seq.push_back(*base);
    if (order_.kind == OrderKind::block) {
      std::vector<bool> in_block(names_.size(), false);
      for (const auto& v : order_.block) {
        auto it = index_.find(v);
        if (it == index_.end()) throw RingError("block order names unknown variable '" + v + "'");
        in_block[it->second] = true;
      }
      for (auto v : seq) (in_block[v] ? first_ : second_).push_back(v);
    } else {
      first_ = std::move(seq);
    }
  }

  static RingPtr make(std::vector<std::string> variables,
                      MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const PolyRing>(std::move(variables), std::move(order));
  }

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw RingError("unknown variable '" + std::string(name) + "'");
    return *i;
  }
  bool has(std::string_view name) const { return find(name).has_value(); }

  /// Three-way comparison of two exponent vectors: >0 when a is larger.
  int compare(const Exponent* a, const Exponent* b) const {
    switch (order_.kind) {
      case OrderKind::lex:
        for (auto v : first_)
          if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
        return 0;
      case OrderKind::grevlex:
        return grevlex(first_, a, b);
      case OrderKind::block:
        if (int c = grevlex(first_, a, b)) return c;
        return grevlex(second_, a, b);
    }
    return 0;
  }

  /// Same variables and order (names in the same positions).
  bool same_as(const PolyRing& o) const {
    return this == &o || (names_ == o.names_ && order_ == o.order_);
  }
  /// Same variable listing; orders may differ, so exponent rows are compatible.
  bool same_variables(const PolyRing& o) const { return this == &o || names_ == o.names_; }

  /// Copy of this ring with a different monomial order.
  RingPtr with_order(MonomialOrder order) const {
    return make(names_, std::move(order));
  }
  /// Copy with extra variables appended (each must be fresh).
  RingPtr extended(const std::vector<std::string>& extra,
                   std::optional<MonomialOrder> order = std::nullopt) const {
    auto names = names_;
    names.insert(names.end(), extra.begin(), extra.end());
    return make(std::move(names), order.value_or(order_.kind == OrderKind::block
                                                      ? MonomialOrder::grevlex()
                                                      : order_));
  }

  /// A variable name not yet used in the ring, derived from `stem`.
  std::string fresh_name(std::string_view stem) const {
    std::string candidate(stem);
    for (int k = 0; has(candidate); ++k) candidate = std::string(stem) + "_" + std::to_string(k);
    return candidate;
  }

 private:
  static int grevlex(const std::vector<std::size_t>& seq, const Exponent* a, const Exponent* b) {
    unsigned da = 0, db = 0;
    for (auto v : seq) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
    return 0;
  }

  std::vector<std::string> names_;
  MonomialOrder order_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> second_;
};

inline void require_same_ring(const PolyRing& a, const PolyRing& b) {
  if (!a.same_as(b)) throw RingError("ring mismatch");
}

}  // namespace lmlab
