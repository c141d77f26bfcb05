#include "opekit/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace opekit {

Poly::Poly(Rational constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::variable() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::rescale_variable(const Rational& a) const {
  std::vector<Rational> out(c_.size());
  Rational p(1);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    out[k] = c_[k] * p;
    p *= a;
  }
  return Poly(std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator-(const Poly& a) {
  std::vector<Rational> out(a.c_.size());
  for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] = -a.c_[k];
  return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = a;
  if (rem.degree() < b.degree()) return {Poly(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - b.degree()) + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rational f = rem.leading() / b.leading();
    q[static_cast<std::size_t>(shift)] = f;
    std::vector<Rational> sub(static_cast<std::size_t>(shift), Rational(0));
    sub.push_back(f);
    rem = rem - b * Poly(std::move(sub));
  }
  return {Poly(std::move(q)), rem};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // make monic
  Rational lead = a.leading();
  std::vector<Rational> out(a.c_.size());
  for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] = a.c_[k] / lead;
  return Poly(std::move(out));
}

Poly Poly::divide_exact(const Poly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) throw std::logic_error("divide_exact: nonzero remainder");
  return q;
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& ck = coeff(k);
    if (ck == 0) continue;
    Rational mag = ck < 0 ? Rational(-ck) : ck;
    if (first) {
      if (ck < 0) os << "-";
      first = false;
    } else {
      os << (ck < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << "N";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string to_string(const Poly& p) { return p.str(); }

}  // namespace opekit
