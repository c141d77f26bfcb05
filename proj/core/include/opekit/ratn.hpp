#ifndef OPEKIT_RATN_HPP
#define OPEKIT_RATN_HPP

#include <string>

#include "opekit/errors.hpp"
#include "opekit/polynomial.hpp"
#include "opekit/rational.hpp"

namespace opekit {

/// Exact rational function of the formal rank symbol N.  Canonical form:
/// numerator and denominator share no nonconstant factor and the
/// denominator is monic, so equality is plain structural comparison.
class RatN {
 public:
  RatN() = default;                                    // zero
  RatN(Rational r);                                    // NOLINT constant
  RatN(int v) : RatN(Rational(v)) {}                   // NOLINT constant
  RatN(const Poly& num, const Poly& den);

  /// The symbol N itself.
  static RatN n();
  static RatN from_fraction(long num, long den);

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// Exact substitution N := x.  Throws pole_error when the denominator
  /// vanishes at x.
  Rational eval(const Rational& x) const;
  bool has_pole_at(const Rational& x) const { return den_.eval(x) == 0; }

  /// Substitute N -> a*N (used for the sp(2N) rule N -> -2N).
  RatN substitute_scaled(const Rational& a) const;

  friend RatN operator+(const RatN& a, const RatN& b);
  friend RatN operator-(const RatN& a, const RatN& b);
  friend RatN operator-(const RatN& a);
  friend RatN operator*(const RatN& a, const RatN& b);
  friend RatN operator/(const RatN& a, const RatN& b);
  RatN& operator+=(const RatN& o) { return *this = *this + o; }
  RatN& operator-=(const RatN& o) { return *this = *this - o; }
  RatN& operator*=(const RatN& o) { return *this = *this * o; }
  RatN& operator/=(const RatN& o) { return *this = *this / o; }

  friend bool operator==(const RatN& a, const RatN& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatN& a, const RatN& b) { return !(a == b); }

  /// "(N^2 - 1)/(2*N^2)" style, integer-primitive, parseable by the CLI.
  std::string str() const;

 private:
  void reduce();
  Poly num_ = Poly();
  Poly den_ = Poly(1);
};

inline std::string to_string(const RatN& r) { return r.str(); }

}  // namespace opekit

#endif
