#ifndef OPEKIT_ALGEBRAS_HPP
#define OPEKIT_ALGEBRAS_HPP

#include <string>
#include <vector>

#include "opekit/expr.hpp"
#include "opekit/wick.hpp"

namespace opekit {

enum class Family { su, so, sp };

std::string family_name(Family f);

/// A symmetry family packaged as its completeness relation and Casimir
/// data, everything in the alpha^2 = 2 normalization:
///   sum_a t^a_ij t^a_kl =
///     c_exchange d_il d_jk + c_trace d_ij d_kl + c_antisym d_ik d_jl
struct AlgebraSpec {
  Family family;
  RatN casimir_fund;      // C(N): level carried by one fermion multiplet
  RatN casimir2_fund;     // C2(N)
  RatN casimir2_adjoint;  // C2(G)
  RatN c_exchange, c_trace, c_antisym;

  static AlgebraSpec su_family();
  static AlgebraSpec so_family();
  /// Symbolic completeness for sp(2N) would need the symplectic form in
  /// the index calculus; sp claims are validated numerically instead.
  static AlgebraSpec for_family(Family f);
};

enum class SpeciesChoice { fermion, ghost, both };

/// One term of the completeness-contracted bilocal sum_a L^a(z) L^a(w):
/// coeff * prefactor_deltas * left(z) * right(w), with the delta factors
/// contracting indices across the two insertions.
struct BilocalTerm {
  SymbolicExpr left;
  SymbolicExpr right;
  Monomial prefactor;  // scalar monomial carrying the delta structure
  RatN coeff;
};
using Bilocal = std::vector<BilocalTerm>;

/// The four-field bilocal with sum_a t^a x t^a replaced via the
/// completeness rule; ready for the Wick normal product.
Bilocal casimir_bilocal(const AlgebraSpec& spec, SpeciesChoice species);

/// lim z->w of the bilocal: sum of delta-prefactored normal products.
/// Equals C2(G) times the Sugawara stress tensor.
SymbolicExpr casimir_normal_product(const AlgebraSpec& spec, SpeciesChoice species);

/// Full Laurent expansion of the bilocal (for level and regularity checks).
LaurentOPE<RatN> casimir_ope(const AlgebraSpec& spec, SpeciesChoice species);

/// Left-right perturbation sum_a L^a(z) Lbar^a(zbar) as a local operator.
SymbolicExpr casimir_left_right(const AlgebraSpec& spec);

/// Named current multiplet (gl(1|1): H, J, S+, S-; osp(2|2) adds
/// J+, J-, Shat+, Shat-).
struct CurrentMultiplet {
  std::vector<std::pair<std::string, SymbolicExpr>> members;
  const SymbolicExpr* find(const std::string& name) const;
};

CurrentMultiplet gl11_multiplet();
CurrentMultiplet osp22_multiplet();

/// True iff every multiplet member commutes with every current L^a of the
/// family, tested through the matrix-valued current L_ij with free indices
/// and the family projection (su: contraction with any traceless matrix,
/// so: with any antisymmetric matrix).
bool check_mutual_commute(const AlgebraSpec& spec, const CurrentMultiplet& multiplet);

/// Same check for a single candidate operator.
bool commutes_with_currents(const AlgebraSpec& spec, const SymbolicExpr& candidate);

struct WeightOneReport {
  bool ok = true;
  bool scalar_third_pole = false;  // reported separately, does not fail the check
};

/// For each member K: pole(2,0) of T(z)K(w) equals K, pole(1,0) equals dK,
/// and higher poles carry no operator content.
WeightOneReport weight_one_primary_check(const SymbolicExpr& stress,
                                         const CurrentMultiplet& multiplet);

/// All OPEs of T with the multiplet members are pole-free (weight zero in
/// a commuting sector).
bool all_poles_vanish(const SymbolicExpr& stress, const CurrentMultiplet& multiplet);

}  // namespace opekit

#endif
