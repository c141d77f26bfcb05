#ifndef OPEKIT_POLYNOMIAL_HPP
#define OPEKIT_POLYNOMIAL_HPP

#include <string>
#include <vector>

#include "opekit/rational.hpp"

namespace opekit {

/// Dense univariate polynomial in the formal rank symbol N over Q.
/// Degrees in this project stay below ~10, so dense storage is the
/// right trade-off.
class Poly {
 public:
  Poly() = default;
  Poly(Rational constant);  // NOLINT(google-explicit-constructor)
  Poly(int constant) : Poly(Rational(constant)) {}  // NOLINT
  explicit Poly(std::vector<Rational> coeffs);      // coeffs[k] * N^k

  /// The monomial N.
  static Poly variable();

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const;
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;

  /// p(a*N): substitute a scalar multiple of the variable.
  Poly rescale_variable(const Rational& a) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b);

  Poly divide_exact(const Poly& b) const;  // throws if remainder nonzero

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::string to_string(const Poly& p);

}  // namespace opekit

#endif
