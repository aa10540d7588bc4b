// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "lmlab/ideal.hpp"

namespace lmlab {

/// A named affine chart: ring, ideal, and where its equations come from.
struct ChartPresentation {
  std::string name;
  RingPtr ring;
  Ideal ideal;
  std::string provenance;
  std::map<std::string, std::string> variable_roles;  // matrix-entry | multiplier | base | ...

  ChartPresentation() = default;
  ChartPresentation(std::string n, Ideal I, std::string prov, std::map<std::string, std::string> roles = {})
      : name(std::move(n)), ring(I.ring()), ideal(std::move(I)), provenance(std::move(prov)),
        variable_roles(std::move(roles)) {
    if (provenance.empty()) throw std::invalid_argument("chart '" + name + "' needs a provenance");
    if (variable_roles.empty())
      for (const auto& v : ring->names()) variable_roles[v] = v == kBaseVariable ? "base" : "coordinate";
  }
};

class ImportError : public std::runtime_error {
 public:
  ImportError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

inline std::string order_line(const MonomialOrder& o) {
  switch (o.kind) {
    case OrderKind::lex: return "order lex";
    case OrderKind::grevlex: return "order grevlex";
    case OrderKind::block: {
      std::string s = "order block [";
      for (std::size_t i = 0; i < o.block.size(); ++i) s += (i ? ", " : "") + o.block[i];
      return s + "]";
    }
  }
  return {};
}

/// Generators with integer coefficients of content 1, positive leading
/// coefficient, sorted ascending by leading term (ties by the full term list).
inline std::vector<Polynomial> canonical_generators(const Ideal& I) {
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.primitive());
  std::sort(gens.begin(), gens.end(),
            [](const Polynomial& a, const Polynomial& b) { return Polynomial::compare_terms(a, b) < 0; });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

inline std::string export_ideal(const Ideal& I) {
  std::ostringstream out;
  out << "# lmlab-ideal v1\n";
  out << "ring QQ [";
  const auto& names = I.ring()->names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
  out << "]\n" << order_line(I.ring()->order()) << "\n";
  for (const auto& g : canonical_generators(I)) out << "gen " << to_string(g) << "\n";
  return out.str();
}

namespace detail {

inline std::vector<std::string> bracket_list(const std::string& text, std::size_t line, std::size_t col) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ImportError("expected a bracketed list", line, col);
  std::vector<std::string> items;
  std::string cur;
  auto flush = [&](std::size_t at) {
    std::string t;
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ImportError("empty list entry", line, col + at);
    items.push_back(t);
    cur.clear();
  };
  if (text.find_first_not_of(" \t", 1) == text.size() - 1) return items;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == ',')
      flush(i);
    else
      cur += text[i];
  }
  flush(text.size() - 1);
  return items;
}

}  // namespace detail

inline Ideal import_ideal(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next() || line != "# lmlab-ideal v1") throw ImportError("expected header '# lmlab-ideal v1'", 1, 1);
  if (!next() || line.rfind("ring QQ ", 0) != 0) throw ImportError("expected 'ring QQ [...]'", lineno ? lineno : 2, 1);
  std::vector<std::string> vars = detail::bracket_list(line.substr(8), lineno, 9);
  if (!next() || line.rfind("order ", 0) != 0) throw ImportError("expected 'order ...'", lineno ? lineno : 3, 1);
  std::string tok = line.substr(6);
  MonomialOrder order;
  if (tok == "grevlex") {
    order = MonomialOrder::grevlex();
  } else if (tok == "lex") {
    order = MonomialOrder::lex();
  } else if (tok.rfind("block ", 0) == 0) {
    order = MonomialOrder::eliminating(detail::bracket_list(tok.substr(6), lineno, 13));
  } else {
    throw ImportError("unknown order '" + tok + "'", lineno, 7);
  }
  RingPtr ring;
  try {
    ring = PolyRing::make(vars, order);
  } catch (const RingError& e) {
    throw ImportError(e.what(), lineno, 1);
  }
  std::vector<Polynomial> gens;
  while (next()) {
    if (line.empty()) continue;
    if (line.rfind("gen ", 0) != 0) throw ImportError("expected 'gen <expression>'", lineno, 1);
    try {
      gens.push_back(parse_poly(line.substr(4), ring));
    } catch (const ParseError& e) {
      throw ImportError(e.what(), lineno, 4 + e.column());
    }
  }
  return Ideal(ring, gens);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline void export_chart(const ChartPresentation& c, const std::string& path) { write_file(path, export_ideal(c.ideal)); }

inline ChartPresentation import_chart(const std::string& path) {
  Ideal I = import_ideal(read_file(path));
  return ChartPresentation(path, I, "imported from " + path);
}

}  // namespace lmlab
