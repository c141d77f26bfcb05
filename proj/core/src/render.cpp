#include "opekit/render.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

namespace opekit {

namespace {

/// Display names for summed indices: first-appearance order, skipping
/// names already used by free indices of the monomial.
std::map<std::string, std::string> display_names(const Monomial& m) {
  std::vector<std::string> free = free_indices(m);
  auto taken = [&](const std::string& s) {
    return std::find(free.begin(), free.end(), s) != free.end();
  };
  static const char* pool[] = {"i", "j", "k", "l", "m", "n", "p", "q", "r", "s"};
  std::map<std::string, std::string> out;
  std::size_t next = 0;
  auto assign = [&](const FlavorIndex& ix) {
    if (!ix.is_abstract() || ix.name()[0] != '#') return;
    if (out.count(ix.name())) return;
    while (next < std::size(pool) && taken(pool[next])) ++next;
    out[ix.name()] = next < std::size(pool) ? pool[next++] : "x" + std::to_string(next++);
  };
  for (const auto& f : m.factors) assign(f.index);
  for (const auto& d : m.deltas) {
    assign(d.left);
    assign(d.right);
  }
  return out;
}

std::string index_str(const FlavorIndex& ix, const std::map<std::string, std::string>& names) {
  if (ix.is_concrete()) return std::to_string(ix.value());
  auto it = names.find(ix.name());
  return it == names.end() ? ix.name() : it->second;
}

std::string field_str(const FieldSymbol& f, const std::map<std::string, std::string>& names) {
  std::string atom;
  atom += f.species == Species::psi ? "psi" : "beta";
  if (f.chirality == Chirality::antiholomorphic) atom += "b";
  atom += "(";
  atom += f.charge == Charge::plus ? "+" : "-";
  atom += "," + index_str(f.index, names) + ")";
  for (int k = 0; k < f.deriv; ++k) atom = "d(" + atom + ")";
  return atom;
}

std::string coeff_prefix(const RatN& c, bool* negative) {
  std::string s = c.str();
  *negative = !s.empty() && s[0] == '-';
  if (*negative) s = s.substr(1);
  if (s == "1") return "";
  bool atomic = s.find_first_of("+-*/^ ") == std::string::npos;
  return (atomic ? s : "(" + s + ")") + "*";
}

std::string latex_index(const FlavorIndex& ix, const std::map<std::string, std::string>& names) {
  return index_str(ix, names);
}

std::string latex_field(const FieldSymbol& f, const std::map<std::string, std::string>& names) {
  std::string core = f.species == Species::psi ? "\\psi" : "\\beta";
  if (f.chirality == Chirality::antiholomorphic) core = "\\bar" + core;
  std::string sub = f.charge == Charge::plus ? "+" : "-";
  std::string out = core + "_{" + sub + "}^{" + latex_index(f.index, names) + "}";
  for (int k = 0; k < f.deriv; ++k) out = "\\partial " + out;
  return out;
}

std::string latex_poly_str(std::string s) {
  // strip one layer of outer parentheses, drop '*', brace the exponents
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool outer = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0) outer = false;
    }
    if (outer) s = s.substr(1, s.size() - 2);
  }
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') {
      out += "\\,";
      continue;
    }
    if (s[i] == '^') {
      out += "^{";
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) out += s[j++];
      out += "}";
      i = j - 1;
      continue;
    }
    out += s[i];
  }
  return out;
}

std::string latex_ratn(const RatN& c) {
  std::string s = c.str();
  // split at the top-level '/'
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) slash = i;
  }
  if (slash == std::string::npos) return latex_poly_str(s);
  std::string num = latex_poly_str(s.substr(0, slash));
  std::string den = latex_poly_str(s.substr(slash + 1));
  bool negative = !num.empty() && num[0] == '-';
  if (negative) num = num.substr(1);
  return (negative ? std::string("-") : std::string()) + "\\frac{" + num + "}{" + den + "}";
}

}  // namespace

std::string render_monomial(const Monomial& m) {
  auto names = display_names(m);
  std::ostringstream os;
  bool first = true;
  for (const auto& d : m.deltas) {
    if (!first) os << "*";
    os << "delta(" << index_str(d.left, names) << "," << index_str(d.right, names) << ")";
    first = false;
  }
  if (!m.factors.empty()) {
    if (!first) os << "*";
    os << "no(";
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (i) os << ", ";
      os << field_str(m.factors[i], names);
    }
    os << ")";
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::string render_expr(const SymbolicExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    bool negative = false;
    std::string prefix = coeff_prefix(c, &negative);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string body = render_monomial(m);
    if (m.is_identity()) {
      std::string cs = c.str();
      if (!cs.empty() && cs[0] == '-') cs = cs.substr(1);
      bool atomic = cs.find_first_of("+-*/^ ") == std::string::npos;
      os << (atomic ? cs : "(" + cs + ")");
    } else {
      os << prefix << body;
    }
  }
  return os.str();
}

std::string render_expr_latex(const SymbolicExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    std::string cs = latex_ratn(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    auto names = display_names(m);
    if (cs != "1" || m.is_identity()) os << cs << (m.is_identity() ? "" : "\\,");
    for (const auto& d : m.deltas)
      os << "\\delta_{" << latex_index(d.left, names) << latex_index(d.right, names) << "}";
    if (!m.factors.empty()) {
      os << "{:}";
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        if (i) os << " ";
        os << latex_field(m.factors[i], names);
      }
      os << "{:}";
    }
  }
  return os.str();
}

std::string ope_to_json(const LaurentOPE<RatN>& l) {
  nlohmann::ordered_json root;
  root["depth"] = l.depth() == kFullDepth ? -1 : l.depth();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  // highest singularities first, deterministic
  std::vector<std::pair<int, int>> keys;
  for (const auto& [key, expr] : l.entries())
    if (!expr.is_zero()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  for (auto key : keys) {
    nlohmann::ordered_json entry;
    entry["pole_z"] = key.first;
    entry["pole_zbar"] = key.second;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : l.at(key.first, key.second).terms()) {
      nlohmann::ordered_json term;
      term["coeff"] = c.str();
      term["monomial"] = render_monomial(m);
      terms.push_back(std::move(term));
    }
    entry["terms"] = std::move(terms);
    entries.push_back(std::move(entry));
  }
  root["entries"] = std::move(entries);
  return root.dump(2);
}

}  // namespace opekit
