#include "opekit/ratn.hpp"

#include <boost/multiprecision/integer.hpp>

#include <sstream>

namespace opekit {

namespace {

Int igcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Int ilcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = igcd(a, b);
  Int l = (a / g) * b;
  return l < 0 ? Int(-l) : l;
}

Poly scale_poly(const Poly& p, const Rational& s) {
  std::vector<Rational> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c * s);
  return Poly(std::move(out));
}

enum class ParenPolicy { never, multi_term, compound };

std::string render_integer_poly(const Poly& p, ParenPolicy policy) {
  std::string s = p.str();
  bool multi = s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
  // a bare power like N^2 needs no parentheses even in a denominator
  bool needs = policy == ParenPolicy::multi_term
                   ? multi
                   : policy == ParenPolicy::compound &&
                         (multi || s.find('*') != std::string::npos ||
                          (!s.empty() && s[0] == '-'));
  return needs ? "(" + s + ")" : s;
}

}  // namespace

RatN::RatN(Rational r) : num_(Poly(std::move(r))), den_(Poly(1)) {}

RatN::RatN(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("RatN: zero denominator");
  reduce();
}

RatN RatN::n() { return RatN(Poly::variable(), Poly(1)); }

RatN RatN::from_fraction(long num, long den) {
  return RatN(Rational(Int(num), Int(den)));
}

void RatN::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  // normalize to a monic denominator
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_ * Poly(Rational(1) / lead);
    den_ = den_ * Poly(Rational(1) / lead);
  }
}

Rational RatN::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw pole_error("RatN: pole at N = " + x.str());
  return num_.eval(x) / d;
}

RatN RatN::substitute_scaled(const Rational& a) const {
  return RatN(num_.rescale_variable(a), den_.rescale_variable(a));
}

RatN operator+(const RatN& a, const RatN& b) {
  return RatN(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatN operator-(const RatN& a, const RatN& b) { return a + (-b); }

RatN operator-(const RatN& a) {
  RatN r = a;
  r.num_ = -r.num_;
  return r;
}

RatN operator*(const RatN& a, const RatN& b) {
  return RatN(a.num_ * b.num_, a.den_ * b.den_);
}

RatN operator/(const RatN& a, const RatN& b) {
  if (b.is_zero()) throw std::domain_error("RatN: division by zero rational function");
  return RatN(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatN::str() const {
  if (num_.is_zero()) return "0";
  // Re-scale so that both polynomials have integer coefficients with no
  // common integer factor; the denominator keeps a positive leading term.
  Int lcm(1);
  for (const auto& c : num_.coeffs()) lcm = ilcm(lcm, denominator(c));
  for (const auto& c : den_.coeffs()) lcm = ilcm(lcm, denominator(c));
  Poly nint = scale_poly(num_, Rational(lcm));
  Poly dint = scale_poly(den_, Rational(lcm));
  Int g(0);
  for (const auto& c : nint.coeffs()) g = igcd(g, numerator(c));
  for (const auto& c : dint.coeffs()) g = igcd(g, numerator(c));
  if (g > 1) {
    nint = scale_poly(nint, Rational(Int(1), g));
    dint = scale_poly(dint, Rational(Int(1), g));
  }
  if (dint.degree() == 0 && dint.coeff(0) == 1)
    return render_integer_poly(nint, ParenPolicy::never);
  std::ostringstream os;
  os << render_integer_poly(nint, ParenPolicy::multi_term) << "/"
     << render_integer_poly(dint, ParenPolicy::compound);
  return os.str();
}

}  // namespace opekit
