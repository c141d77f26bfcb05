#include "opekit/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "opekit/sugawara.hpp"
#include "opekit/wick.hpp"

namespace opekit {

namespace {

const ExprContext<RatN>& ctx() {
  static const ExprContext<RatN> c = symbolic_context();
  return c;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < n) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::number, src.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < n && is_ident_char(src[i])) ++i;
      std::string name = src.substr(start, i - start);
      // multiplet members spelled with a charge suffix: S+ S- J+ J- Shat+-
      if ((name == "S" || name == "J" || name == "Shat") && i < n &&
          (src[i] == '+' || src[i] == '-')) {
        char next = i + 1 < n ? src[i + 1] : '\0';
        if (!is_ident_char(next) && next != '(') {
          name += src[i];
          ++i;
        }
      }
      out.push_back({Tok::ident, std::move(name), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      default:
        throw parse_error(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::end, "", n});
  return out;
}

/// A parsed value: operator expression, with scalars represented as
/// multiples of the identity monomial.
std::optional<RatN> as_scalar(const SymbolicExpr& e) {
  if (e.is_zero()) return RatN(0);
  if (e.size() != 1) return std::nullopt;
  const auto& [m, c] = *e.terms().begin();
  if (!m.is_identity()) return std::nullopt;
  return c;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : tokens_(lex(src)) {}

  SymbolicExpr parse() {
    SymbolicExpr e = expr();
    expect(Tok::end, "end of input");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw parse_error(peek().pos, "expected " + what + ", found '" + peek().text + "'");
    ++pos_;
  }

  SymbolicExpr expr() {
    SymbolicExpr acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = take().kind == Tok::minus;
      SymbolicExpr rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  SymbolicExpr term() {
    SymbolicExpr acc = factor();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      Token op = take();
      SymbolicExpr rhs = factor();
      if (op.kind == Tok::star) {
        if (auto s = as_scalar(acc))
          acc = *s * rhs;
        else if (auto s2 = as_scalar(rhs))
          acc = *s2 * acc;
        else
          acc = SymbolicExpr::formal_product(acc, rhs, ctx());
      } else {
        auto s = as_scalar(rhs);
        if (!s) throw parse_error(op.pos, "division by an operator expression");
        if (s->is_zero()) throw parse_error(op.pos, "division by zero");
        acc = (RatN(1) / *s) * acc;
      }
    }
    return acc;
  }

  SymbolicExpr factor() {
    if (accept(Tok::minus)) return RatN(-1) * factor();
    return power();
  }

  SymbolicExpr power() {
    SymbolicExpr base = primary();
    if (peek().kind != Tok::caret) return base;
    Token op = take();
    auto s = as_scalar(base);
    if (!s) throw parse_error(op.pos, "'^' applies to scalars only");
    if (peek().kind != Tok::number)
      throw parse_error(peek().pos, "expected integer exponent");
    long k = std::stol(take().text);
    RatN out(1);
    for (long t = 0; t < k; ++t) out = out * *s;
    return SymbolicExpr::scalar(out);
  }

  FlavorIndex index_arg() {
    Token t = take();
    if (t.kind == Tok::number) {
      int v = std::stoi(t.text);
      if (v < 1) throw parse_error(t.pos, "concrete index must be positive");
      return FlavorIndex::concrete(v);
    }
    if (t.kind == Tok::ident) {
      if (t.text[0] == '#') throw parse_error(t.pos, "reserved index name");
      return FlavorIndex::abstract(t.text);
    }
    throw parse_error(t.pos, "expected flavor index");
  }

  Charge charge_arg() {
    Token t = take();
    if (t.kind == Tok::plus) return Charge::plus;
    if (t.kind == Tok::minus) return Charge::minus;
    throw parse_error(t.pos, "expected '+' or '-'");
  }

  SymbolicExpr field_atom(Species sp, Chirality chi, std::size_t at) {
    expect(Tok::lparen, "'('");
    Charge q = charge_arg();
    expect(Tok::comma, "','");
    FlavorIndex ix = index_arg();
    expect(Tok::rparen, "')'");
    Monomial m;
    m.factors.push_back(FieldSymbol{chi, sp, q, 0, std::move(ix)});
    (void)at;
    return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
  }

  SymbolicExpr primary() {
    Token t = take();
    switch (t.kind) {
      case Tok::number:
        return SymbolicExpr::scalar(RatN(Rational(t.text)));
      case Tok::lparen: {
        SymbolicExpr e = expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident:
        return named(t);
      default:
        throw parse_error(t.pos, "unexpected token '" + t.text + "'");
    }
  }

  SymbolicExpr named(const Token& t) {
    const std::string& name = t.text;
    try {
      if (name == "N") return SymbolicExpr::scalar(RatN::n());
      if (name == "psi") return field_atom(Species::psi, Chirality::holomorphic, t.pos);
      if (name == "beta") return field_atom(Species::beta, Chirality::holomorphic, t.pos);
      if (name == "psib") return field_atom(Species::psi, Chirality::antiholomorphic, t.pos);
      if (name == "betab") return field_atom(Species::beta, Chirality::antiholomorphic, t.pos);
      if (name == "d") {
        expect(Tok::lparen, "'('");
        SymbolicExpr e = expr();
        expect(Tok::rparen, "')'");
        return e.total_derivative(ctx());
      }
      if (name == "bar") {
        expect(Tok::lparen, "'('");
        SymbolicExpr e = expr();
        expect(Tok::rparen, "')'");
        return e.mirrored(ctx());
      }
      if (name == "delta") {
        expect(Tok::lparen, "'('");
        FlavorIndex a = index_arg();
        expect(Tok::comma, "','");
        FlavorIndex b = index_arg();
        expect(Tok::rparen, "')'");
        Monomial m;
        m.deltas.emplace_back(std::move(a), std::move(b));
        return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
      }
      if (name == "no") {
        expect(Tok::lparen, "'('");
        std::vector<SymbolicExpr> args;
        args.push_back(expr());
        while (accept(Tok::comma)) args.push_back(expr());
        expect(Tok::rparen, "')'");
        // A list of plain field letters is one normal-ordered word;
        // composite arguments are combined by the point-splitting product.
        auto is_letter = [](const SymbolicExpr& e) {
          if (e.size() != 1) return false;
          const auto& [m, c] = *e.terms().begin();
          return m.deltas.empty() && m.factors.size() == 1 && c == RatN(1);
        };
        if (std::all_of(args.begin(), args.end(), is_letter)) {
          Monomial word;
          for (const auto& a : args) word.factors.push_back(a.terms().begin()->first.factors[0]);
          return SymbolicExpr::from_monomial(std::move(word), RatN(1), ctx());
        }
        SymbolicExpr acc = args.front();
        for (std::size_t k = 1; k < args.size(); ++k)
          acc = normal_product(acc, args[k], ctx());
        return acc;
      }
      if (name == "rho") return density_operator();
      if (name == "T_free") return build_stress_tensor(TensorLabel::free).expr;
      if (name == "T_su0") return build_stress_tensor(TensorLabel::su0).expr;
      if (name == "T_so0") return build_stress_tensor(TensorLabel::so0).expr;
      if (name == "T_gl11") return build_stress_tensor(TensorLabel::gl11).expr;
      if (name == "T_osp22") return build_stress_tensor(TensorLabel::osp22).expr;
      CurrentMultiplet mult = osp22_multiplet();  // includes the gl(1|1) members
      if (const SymbolicExpr* member = mult.find(name)) return *member;
    } catch (const malformed_index_error& err) {
      throw parse_error(t.pos, err.what());
    }
    throw parse_error(t.pos, "unknown identifier '" + name + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolicExpr parse_expr(const std::string& src) {
  Parser p(src);
  try {
    return p.parse();
  } catch (const malformed_index_error& err) {
    // semantic violation surfacing from canonicalization
    throw parse_error(0, err.what());
  }
}

RatN parse_ratn(const std::string& src) {
  SymbolicExpr e = parse_expr(src);
  if (e.is_zero()) return RatN(0);
  if (e.size() == 1 && e.terms().begin()->first.is_identity()) return e.terms().begin()->second;
  throw parse_error(0, "expected a scalar rational function of N");
}

}  // namespace opekit
