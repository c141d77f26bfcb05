#ifndef OPEKIT_EXPR_HPP
#define OPEKIT_EXPR_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "opekit/coeff.hpp"
#include "opekit/fields.hpp"

namespace opekit {

/// Finite sum of coefficient-weighted canonical monomials.  The term map
/// is the canonical form: two expressions are equal iff the maps coincide.
template <class C>
class OperatorExpr {
 public:
  using Terms = std::map<Monomial, C>;

  OperatorExpr() = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  static OperatorExpr zero() { return {}; }

  static OperatorExpr scalar(C value) {
    OperatorExpr e;
    if (!coeff_traits<C>::is_zero(value)) e.terms_.emplace(Monomial{}, std::move(value));
    return e;
  }

  static OperatorExpr from_monomial(Monomial m, C coeff, const ExprContext<C>& ctx) {
    OperatorExpr e;
    e.accumulate(std::move(m), std::move(coeff), ctx);
    return e;
  }

  /// Canonicalize a raw monomial and fold it into the sum.
  void accumulate(Monomial raw, C coeff, const ExprContext<C>& ctx) {
    if (coeff_traits<C>::is_zero(coeff)) return;
    CanonicalCore core = canonicalize_core(raw);
    if (core.vanishes) return;
    if (core.sign < 0) coeff = coeff_traits<C>::zero() - coeff;
    for (int k = 0; k < core.trace_power; ++k) coeff = coeff * ctx.flavor_trace;
    accumulate_canonical(std::move(core.monomial), std::move(coeff));
  }

  /// Fold in a term that is already canonical.
  void accumulate_canonical(Monomial m, C coeff) {
    if (coeff_traits<C>::is_zero(coeff)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(coeff));
      return;
    }
    it->second = it->second + coeff;
    if (coeff_traits<C>::is_zero(it->second)) terms_.erase(it);
  }

  C coefficient(const Monomial& canonical) const {
    auto it = terms_.find(canonical);
    return it == terms_.end() ? coeff_traits<C>::zero() : it->second;
  }

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out = a;
    for (const auto& [m, c] : b.terms_) out.accumulate_canonical(m, c);
    return out;
  }
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out = a;
    for (const auto& [m, c] : b.terms_) out.accumulate_canonical(m, coeff_traits<C>::zero() - c);
    return out;
  }
  friend OperatorExpr operator-(const OperatorExpr& a) {
    return OperatorExpr() - a;
  }
  /// Scalar multiple.
  friend OperatorExpr operator*(const C& s, const OperatorExpr& a) {
    OperatorExpr out;
    if (coeff_traits<C>::is_zero(s)) return out;
    for (const auto& [m, c] : a.terms_) out.accumulate_canonical(m, s * c);
    return out;
  }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorExpr& a, const OperatorExpr& b) { return !(a == b); }

  /// Formal normal-ordered juxtaposition at one point; no contractions
  /// (those belong to the Wick kernel).
  static OperatorExpr formal_product(const OperatorExpr& a, const OperatorExpr& b,
                                     const ExprContext<C>& ctx) {
    OperatorExpr out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb_raw, cb] : b.terms_) {
        // summed indices of the two operands are distinct sums; free names
        // shared across operands contract by the repeated-index convention
        Monomial mb = rename_dummies(mb_raw, "#R");
        Monomial m;
        m.factors = ma.factors;
        m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
        m.deltas = ma.deltas;
        m.deltas.insert(m.deltas.end(), mb.deltas.begin(), mb.deltas.end());
        out.accumulate(std::move(m), ca * cb, ctx);
      }
    return out;
  }

  /// Chirality flip on every symbol (z <-> zbar).  An involution.
  OperatorExpr mirrored(const ExprContext<C>& ctx) const {
    OperatorExpr out;
    for (const auto& [m, c] : terms_) {
      Monomial flipped = m;
      for (auto& f : flipped.factors) f.chirality = opposite(f.chirality);
      out.accumulate(std::move(flipped), c, ctx);
    }
    return out;
  }

  /// Leibniz derivative acting on the factors of the given chirality.
  OperatorExpr derivative(Chirality chi, const ExprContext<C>& ctx) const {
    OperatorExpr out;
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.factors.size(); ++i) {
        if (m.factors[i].chirality != chi) continue;
        Monomial bumped = m;
        ++bumped.factors[i].deriv;
        out.accumulate(std::move(bumped), c, ctx);
      }
    return out;
  }

  /// d_z + d_zbar.
  OperatorExpr total_derivative(const ExprContext<C>& ctx) const {
    return derivative(Chirality::holomorphic, ctx) +
           derivative(Chirality::antiholomorphic, ctx);
  }

  /// Grassmann parity if every monomial agrees, otherwise nullopt.
  std::optional<int> homogeneous_parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
      (void)c;
      int mp = m.parity();
      if (!p)
        p = mp;
      else if (*p != mp)
        return std::nullopt;
    }
    if (!p) p = 0;
    return p;
  }

  /// Sector parity if every monomial agrees, otherwise nullopt.
  std::optional<int> homogeneous_parity(Chirality chi) const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
      (void)c;
      int mp = m.parity(chi);
      if (!p)
        p = mp;
      else if (*p != mp)
        return std::nullopt;
    }
    if (!p) p = 0;
    return p;
  }

  template <class Pred>
  OperatorExpr filter(Pred&& keep) const {
    OperatorExpr out;
    for (const auto& [m, c] : terms_)
      if (keep(m)) out.accumulate_canonical(m, c);
    return out;
  }

  /// True when every monomial is field-free (scalar multiples of the
  /// identity, possibly with unresolved free-index deltas).
  bool scalar_only() const {
    for (const auto& [m, c] : terms_) {
      (void)c;
      if (!m.is_scalar()) return false;
    }
    return true;
  }

 private:
  Terms terms_;
};

using SymbolicExpr = OperatorExpr<RatN>;
using NumericExpr = OperatorExpr<GaussianRational>;

}  // namespace opekit

#endif
