#ifndef OPEKIT_WICK_HPP
#define OPEKIT_WICK_HPP

#include <map>
#include <utility>
#include <vector>

#include "opekit/expr.hpp"

namespace opekit {

/// Nonzero two-point pairings of the free fields, first argument at z,
/// second at w:
///   <psi-(z) psi+(w)> = <psi+(z) psi-(w)> = delta/(z-w)
///   <beta+(z) beta-(w)> = -<beta-(z) beta+(w)> = delta/(z-w)
/// All cross-species, same-charge, and mixed-chirality pairings vanish.
inline bool contractible(const FieldSymbol& a, const FieldSymbol& b) {
  return a.chirality == b.chirality && a.species == b.species && a.charge != b.charge;
}

/// Sign of the bare propagator <a(z) b(w)> before derivatives.
inline int propagator_sign(const FieldSymbol& a, const FieldSymbol& /*b*/) {
  if (a.species == Species::psi) return 1;
  return a.charge == Charge::plus ? 1 : -1;
}

/// Result of an OPE: map from (holomorphic, antiholomorphic) pole orders
/// to the operator coefficient located at the second insertion point.
/// Entries with negative pole order (positive powers of the separation)
/// are not stored.
template <class C>
class LaurentOPE {
 public:
  using Entries = std::map<std::pair<int, int>, OperatorExpr<C>>;

  explicit LaurentOPE(int depth = 0) : depth_(depth) {}

  int depth() const { return depth_; }
  const Entries& entries() const { return entries_; }

  const OperatorExpr<C>& at(int pole_z, int pole_zbar) const {
    static const OperatorExpr<C> empty;
    auto it = entries_.find({pole_z, pole_zbar});
    return it == entries_.end() ? empty : it->second;
  }

  bool regular() const {
    for (const auto& [key, expr] : entries_)
      if ((key.first > 0 || key.second > 0) && !expr.is_zero()) return false;
    return true;
  }

  int max_pole_z() const {
    int p = 0;
    for (const auto& [key, expr] : entries_)
      if (!expr.is_zero()) p = std::max(p, key.first);
    return p;
  }
  int max_pole_zbar() const {
    int q = 0;
    for (const auto& [key, expr] : entries_)
      if (!expr.is_zero()) q = std::max(q, key.second);
    return q;
  }

  void accumulate(int pole_z, int pole_zbar, Monomial m, C coeff, const ExprContext<C>& ctx) {
    entries_[{pole_z, pole_zbar}].accumulate(std::move(m), std::move(coeff), ctx);
  }

  void prune() {
    for (auto it = entries_.begin(); it != entries_.end();)
      it = it->second.is_zero() ? entries_.erase(it) : std::next(it);
  }

 private:
  int depth_;
  Entries entries_;
};

/// Expand to all orders needed so every stored pole entry and the (0,0)
/// point-splitting product are exact.
inline constexpr int kFullDepth = -1;

struct OpeStats {
  unsigned long long matchings = 0;  // contraction subsets enumerated
};

namespace detail {

struct Contraction {
  std::size_t a_pos, b_pos;
};

/// Enumerate Taylor assignments for the surviving z-cluster fields and
/// deposit the resulting terms.
template <class C>
void deposit_with_taylor(LaurentOPE<C>& out, const std::vector<FieldSymbol>& a_remnants,
                         const std::vector<FieldSymbol>& b_remnants,
                         const std::vector<DeltaFactor>& deltas, const C& base_coeff,
                         int pole_z, int pole_zbar, int budget_z, int budget_zbar,
                         const ExprContext<C>& ctx) {
  // Assign an expansion order r_f >= 0 to each remnant of the z cluster,
  // bounded per chirality so that only pole orders >= 0 are produced.
  std::vector<int> orders(a_remnants.size(), 0);

  auto emit = [&]() {
    int used_z = 0, used_zbar = 0;
    C coeff = base_coeff;
    for (std::size_t i = 0; i < a_remnants.size(); ++i) {
      if (orders[i] == 0) continue;
      long fact = 1;
      for (int k = 2; k <= orders[i]; ++k) fact *= k;
      coeff = coeff / coeff_traits<C>::from_integer(fact);
      if (a_remnants[i].chirality == Chirality::holomorphic)
        used_z += orders[i];
      else
        used_zbar += orders[i];
    }
    Monomial m;
    m.factors.reserve(a_remnants.size() + b_remnants.size());
    for (std::size_t i = 0; i < a_remnants.size(); ++i) {
      FieldSymbol f = a_remnants[i];
      f.deriv += orders[i];
      m.factors.push_back(std::move(f));
    }
    m.factors.insert(m.factors.end(), b_remnants.begin(), b_remnants.end());
    m.deltas = deltas;
    out.accumulate(pole_z - used_z, pole_zbar - used_zbar, std::move(m), coeff, ctx);
  };

  // Depth-first over order tuples with per-chirality budgets.
  auto rec = [&](auto&& self, std::size_t i, int left_z, int left_zbar) -> void {
    if (i == a_remnants.size()) {
      emit();
      return;
    }
    int cap = a_remnants[i].chirality == Chirality::holomorphic ? left_z : left_zbar;
    for (int r = 0; r <= cap; ++r) {
      orders[i] = r;
      int nz = left_z, nzb = left_zbar;
      (a_remnants[i].chirality == Chirality::holomorphic ? nz : nzb) -= r;
      self(self, i + 1, nz, nzb);
    }
    orders[i] = 0;
  };
  rec(rec, 0, std::min(budget_z, pole_z), std::min(budget_zbar, pole_zbar));
}

/// All multi-contractions between one z-cluster monomial and one w-cluster
/// monomial.  The inputs are normal-ordered, so pairs inside one cluster
/// never contract.
template <class C>
void ope_monomial_pair(LaurentOPE<C>& out, const Monomial& ma, const C& ca,
                       const Monomial& mb_raw, const C& cb, int depth, const ExprContext<C>& ctx,
                       OpeStats* stats) {
  const Monomial mb = rename_dummies(mb_raw, "#R");
  const auto& af = ma.factors;
  const auto& bf = mb.factors;
  const std::size_t s = af.size(), t = bf.size();

  std::vector<char> b_used(t, 0);
  std::vector<Contraction> pairs;

  auto process_matching = [&]() {
    if (stats) ++stats->matchings;
    // Grassmann sign: extract pairs left to right; every surviving odd
    // symbol strictly between the partners of an odd pair costs a sign.
    std::vector<char> alive(s + t, 1);
    int sign = 1;
    for (const auto& pr : pairs) {
      std::size_t i = pr.a_pos, j = s + pr.b_pos;
      if (af[pr.a_pos].is_odd()) {
        int odd_between = 0;
        for (std::size_t k = i + 1; k < j; ++k) {
          if (!alive[k]) continue;
          const FieldSymbol& f = k < s ? af[k] : bf[k - s];
          if (f.is_odd()) ++odd_between;
        }
        if (odd_between % 2 != 0) sign = -sign;
      }
      alive[i] = alive[j] = 0;
    }

    C coeff = ca * cb;
    if (sign < 0) coeff = coeff_traits<C>::zero() - coeff;
    int pole_z = 0, pole_zbar = 0;
    std::vector<DeltaFactor> deltas = ma.deltas;
    deltas.insert(deltas.end(), mb.deltas.begin(), mb.deltas.end());
    for (const auto& pr : pairs) {
      const FieldSymbol& a = af[pr.a_pos];
      const FieldSymbol& b = bf[pr.b_pos];
      // <d^m a(z) d^k b(w)> = sign * (-1)^m (m+k)! delta / (z-w)^(m+k+1)
      long fact = 1;
      for (int k = 2; k <= a.deriv + b.deriv; ++k) fact *= k;
      long amp = static_cast<long>(propagator_sign(a, b)) * (a.deriv % 2 == 0 ? 1 : -1) * fact;
      coeff = coeff * coeff_traits<C>::from_integer(amp);
      (a.chirality == Chirality::holomorphic ? pole_z : pole_zbar) += a.deriv + b.deriv + 1;
      deltas.emplace_back(a.index, b.index);
    }

    std::vector<FieldSymbol> a_rem, b_rem;
    for (std::size_t k = 0; k < s; ++k)
      if (alive[k]) a_rem.push_back(af[k]);
    for (std::size_t k = 0; k < t; ++k)
      if (alive[s + k]) b_rem.push_back(bf[k]);

    // any negative depth means exact
    int budget_z = depth < 0 ? pole_z : depth;
    int budget_zbar = depth < 0 ? pole_zbar : depth;
    deposit_with_taylor(out, a_rem, b_rem, deltas, coeff, pole_z, pole_zbar, budget_z,
                        budget_zbar, ctx);
  };

  // Recurse over A positions; each is either skipped or paired with an
  // unused admissible B position.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s) {
      process_matching();
      return;
    }
    self(self, i + 1);  // a_i uncontracted
    for (std::size_t j = 0; j < t; ++j) {
      if (b_used[j] || !contractible(af[i], bf[j])) continue;
      b_used[j] = 1;
      pairs.push_back({i, j});
      self(self, i + 1);
      pairs.pop_back();
      b_used[j] = 0;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// A(z, zbar) B(w, wbar) by Wick's theorem: sum over all multi-contractions
/// pairing one symbol from each cluster, residual z-fields Taylor-expanded
/// about w to `depth` (kFullDepth = exact through the (0,0) entry).
/// Bilinear in both arguments; the result lives at the second insertion.
template <class C>
LaurentOPE<C> ope(const OperatorExpr<C>& a, const OperatorExpr<C>& b, int depth,
                  const ExprContext<C>& ctx, OpeStats* stats = nullptr) {
  LaurentOPE<C> out(depth);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      detail::ope_monomial_pair(out, ma, ca, mb, cb, depth, ctx, stats);
  out.prune();
  return out;
}

template <class C>
const OperatorExpr<C>& pole_coeff(const LaurentOPE<C>& l, int pole_z, int pole_zbar) {
  return l.at(pole_z, pole_zbar);
}

/// Point-splitting normal product: the (0,0) Laurent coefficient, exact.
template <class C>
OperatorExpr<C> normal_product(const OperatorExpr<C>& a, const OperatorExpr<C>& b,
                               const ExprContext<C>& ctx) {
  return ope(a, b, kFullDepth, ctx).at(0, 0);
}

/// Check graded locality: ope(a,b) against ope(b,a) continued through
/// (z-w) -> (w-z) with the sign (-1)^{|a||b|}, the w-located operators
/// re-expanded about z.  Compared on all singular entries.
template <class C>
bool graded_symmetry_check(const OperatorExpr<C>& a, const OperatorExpr<C>& b,
                           const ExprContext<C>& ctx) {
  auto pa = a.homogeneous_parity();
  auto pb = b.homogeneous_parity();
  if (!pa || !pb) return false;
  int mutual = (*pa * *pb) % 2;

  LaurentOPE<C> lhs = ope(a, b, kFullDepth, ctx);
  LaurentOPE<C> rhs = ope(b, a, kFullDepth, ctx);

  int pmax = std::max(lhs.max_pole_z(), rhs.max_pole_z());
  int qmax = std::max(lhs.max_pole_zbar(), rhs.max_pole_zbar());

  for (int p = 0; p <= pmax; ++p) {
    for (int q = 0; q <= qmax; ++q) {
      if (p + q == 0) continue;
      OperatorExpr<C> expected;
      for (int r = 0; p + r <= pmax; ++r) {
        for (int s = 0; q + s <= qmax; ++s) {
          OperatorExpr<C> term = rhs.at(p + r, q + s);
          if (term.is_zero()) continue;
          for (int k = 0; k < r; ++k) term = term.derivative(Chirality::holomorphic, ctx);
          for (int k = 0; k < s; ++k) term = term.derivative(Chirality::antiholomorphic, ctx);
          long fact = 1;
          for (int k = 2; k <= r; ++k) fact *= k;
          for (int k = 2; k <= s; ++k) fact *= k;
          int parity = (mutual + p + q + r + s) % 2;
          C scale = coeff_traits<C>::one() / coeff_traits<C>::from_integer(fact);
          if (parity != 0) scale = coeff_traits<C>::zero() - scale;
          expected = expected + scale * term;
        }
      }
      if (lhs.at(p, q) != expected) return false;
    }
  }
  return true;
}

}  // namespace opekit

#endif
