#ifndef OPEKIT_SUGAWARA_HPP
#define OPEKIT_SUGAWARA_HPP

#include <string>
#include <vector>

#include "opekit/algebras.hpp"

namespace opekit {

enum class TensorLabel { free, su0, so0, gl11, osp22 };

std::string tensor_label_name(TensorLabel label);

struct StressTensor {
  TensorLabel label;
  SymbolicExpr expr;
};

/// Stress tensors of the free theory and of the four Sugawara sectors.
///   free : -(1/2)(psi- d psi+ + psi+ d psi- + beta- d beta+ - beta+ d beta-)
///   su0/so0 : normal_product(casimir bilocal) / C2(G)
///   gl11 : two-Casimir combination at level N
///   osp22 : single-Casimir combination at level N
StressTensor build_stress_tensor(TensorLabel label);

/// T_free - T_super - T_boson as an exact identity in N; empty iff proven.
SymbolicExpr decomposition_difference(Family family);
bool verify_decomposition(Family family);

/// Twice the scalar part of the fourth-order pole of T(z)T(w).
RatN central_charge(const SymbolicExpr& t);

/// T is a Virasoro tensor: no third pole, (2,0) = 2T, (1,0) = dT.
bool virasoro_check(const SymbolicExpr& t);

/// Coefficient of `field` in the double pole of T(z) field(w); the field
/// must reappear proportionally (primary), otherwise this throws.
RatN conformal_weight(const SymbolicExpr& t, const SymbolicExpr& field);

/// The common coefficient -kappa of the four kinetic monomials in the
/// arrangement psi- d psi+ + psi+ d psi- + beta- d beta+ - beta+ d beta-.
RatN kappa_kinetic(const SymbolicExpr& t);

/// Mixed-chirality density operator
///   rho = psib- psi+ + psi- psib+ + betab- beta+ + beta- betab+.
SymbolicExpr density_operator();

struct DosResult {
  Family family;
  RatN kappa;
  RatN gamma;  // 2 kappa
  RatN nu;     // gamma / (2 - gamma)
};

/// Table of density-of-states data; sp uses the osp(2|2) tensor under
/// N -> -2N.
DosResult dos_exponents(Family family);

/// The surviving super-sector stress tensor used for the family.
SymbolicExpr super_sector_tensor(Family family);

/// Kinetic extraction and the direct T.rho double pole agree, for both
/// chiralities.
bool dos_two_route_check(Family family);

/// The quartic terms of the super tensor contribute nothing to the double
/// pole on rho.
bool dos_quartic_check(Family family);

/// Substitute N -> scale*N in every coefficient.
SymbolicExpr substitute_rank(const SymbolicExpr& e, const Rational& scale);

struct BetaSystem {
  Family family;
  std::vector<std::string> couplings;
  /// c[k][i][j]: O_i(z,zbar) O_j(0) ~ c^k_ij O_k / (z zbar)
  std::vector<std::vector<std::vector<RatN>>> c;
  std::vector<std::string> rendered;  // one line per beta function
};

/// Left-right perturbing operators for the family: the bosonic casimir
/// L.Lbar plus the supercurrent quadratic Casimir(s).
std::vector<std::pair<std::string, SymbolicExpr>> perturbation_operators(Family family);

/// One-loop beta system from the (1,1) pole entries of all pairwise OPEs,
/// resolved in the operator basis of the perturbations.  Throws when a
/// (1,1) entry leaves the basis span.
BetaSystem beta_one_loop(Family family);

}  // namespace opekit

#endif
