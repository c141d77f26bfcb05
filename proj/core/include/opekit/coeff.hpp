#ifndef OPEKIT_COEFF_HPP
#define OPEKIT_COEFF_HPP

#include "opekit/ratn.hpp"
#include "opekit/rational.hpp"

namespace opekit {

/// Coefficient-ring hooks shared by the symbolic engine (RatN) and the
/// explicit-matrix oracle (GaussianRational).
template <class C>
struct coeff_traits;

template <>
struct coeff_traits<RatN> {
  static RatN zero() { return RatN(); }
  static RatN one() { return RatN(1); }
  static RatN from_integer(long v) { return RatN(static_cast<int>(v)); }
  static RatN from_rational(const Rational& r) { return RatN(r); }
  static bool is_zero(const RatN& c) { return c.is_zero(); }
  static std::string str(const RatN& c) { return c.str(); }
};

template <>
struct coeff_traits<GaussianRational> {
  static GaussianRational zero() { return GaussianRational(); }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational from_integer(long v) { return GaussianRational(Rational(v)); }
  static GaussianRational from_rational(const Rational& r) { return GaussianRational(r); }
  static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
  static std::string str(const GaussianRational& c) { return to_string(c); }
};

/// Everything a canonicalizing constructor needs to know about the ambient
/// flavor space: the value of a closed delta loop.  Symbolically this is
/// the rank symbol N; in the oracle it is the concrete multiplicity.
template <class C>
struct ExprContext {
  C flavor_trace;
};

inline ExprContext<RatN> symbolic_context() { return {RatN::n()}; }
inline ExprContext<GaussianRational> numeric_context(int multiplicity) {
  return {GaussianRational(Rational(multiplicity))};
}

}  // namespace opekit

#endif
