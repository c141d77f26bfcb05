#ifndef OPEKIT_ORACLE_HPP
#define OPEKIT_ORACLE_HPP

#include <vector>

#include "opekit/algebras.hpp"
#include "opekit/expr.hpp"

namespace opekit {

/// Dense square matrix over Q(i); the oracle stays exact everywhere.
using GMat = std::vector<std::vector<GaussianRational>>;
using RMat = std::vector<std::vector<Rational>>;

GMat zero_matrix(int n);
GMat matrix_commutator(const GMat& a, const GMat& b);
GMat matrix_product(const GMat& a, const GMat& b);
GaussianRational matrix_trace(const GMat& a);
bool is_hermitian(const GMat& a);

/// tr(t^a t^b) = lambda * delta^ab fixes the alpha^2 = 2 level convention:
/// su: 1, so: 2, sp: 1.
Rational trace_normalization(Family f);

int flavor_multiplicity(Family f, int n);  // su/so: n, sp(2n): 2n

/// Generator bases with exact Gaussian-rational entries:
///   su(n): n^2-1 Hermitian traceless (n <= 4)
///   so(n): n(n-1)/2 imaginary antisymmetric (n <= 4)
///   sp(2n): n(2n+1) Hermitian with t^T Omega + Omega t = 0 (n <= 2)
std::vector<GMat> generator_basis(Family f, int n);

/// Symplectic form fixed as antidiagonal(1,...,1,-1,...,-1).
GMat symplectic_form(int n);

/// Gram matrix G_ab = tr(u^a u^b)/lambda and its exact inverse.
RMat gram_matrix(const std::vector<GMat>& basis, const Rational& lambda);
RMat invert_matrix(RMat a);

/// Quadratic Casimir of the adjoint representation from the double
/// commutator contraction K(x,y) = tr(ad_x ad_y); verifies K = C2(G) * G
/// entrywise before reporting.
Rational adjoint_casimir_numeric(Family f, int n);

/// Total antisymmetry of the lowered structure constants
/// <[u^a, u^b], u^c>.
bool structure_constants_antisymmetric(Family f, int n);

struct CompletenessResult {
  bool matches_rule = false;  // tensor equality with the family's rule
  Rational casimir2_fund;     // from sum_j S_ijjl = C2(N) d_il
  Rational level_times_dim;   // sum_ij S_ijji = C(N) |G|
};

/// Brute-force sum over the basis compared entrywise against the
/// completeness rule (su/so: the symbolic rule at N=n; sp: the recorded
/// delta/symplectic-form bilinear (1/2)(d_il d_jk - O_ik O_jl)).
CompletenessResult completeness_numeric(Family f, int n);

/// sum_ij u_ij (psi-^i psi+^j + beta-^i beta+^j) with concrete flavors.
NumericExpr matrix_current(const GMat& u);

/// (1/C2G) sum_ab (G^-1)_ab :L^a L^b: from explicit generators.
NumericExpr sugawara_numeric(Family f, int n);

NumericExpr free_tensor_numeric(int multiplicity);

/// Super-sector tensors from the multiplet formulas over `multiplicity`
/// concrete flavors at the given level.
NumericExpr gl11_tensor_numeric(const Rational& level, int multiplicity);
NumericExpr osp22_tensor_numeric(const Rational& level, int multiplicity);

/// The osp(2|2)_{-2n} tensor commuting with sp(2n): the spin doublet is
/// carried by the fermions and the pair currents contract flavors through
/// the symplectic form,
///   P+- = Omega_ij psi-+^i psi-+^j,  Q+- = Omega_ij psi-+^i beta-+^j,
/// with Sugawara combination (at k = -2n)
///   2(2-k) T = H^2 - J^2 - (P+P- + P-P+)/2 - (S+S- - S-S+) - (Q-Q+ - Q+Q-).
NumericExpr osp22_sp_tensor_numeric(int n);

/// Expand every summed index over 1..multiplicity and evaluate all
/// coefficients at N = n_value.  Throws pole_error at a coefficient pole
/// and std::invalid_argument when a free index remains.
NumericExpr expand_flavors(const SymbolicExpr& e, const Rational& n_value, int multiplicity);

/// Every explicit generator current commutes with every multiplet member.
bool numeric_commute_check(Family f, int n);

/// One-loop coefficients of the sp(2n) left-right perturbations
/// { g: sum_a L^a Lbar^a,  gp: the osp(2|2)_{-2n} Casimir }, resolved in
/// that basis from the (1,1) pole entries: c[k][i][j].  Throws when an
/// entry leaves the span.
std::vector<std::vector<std::vector<Rational>>> sp_beta_numeric(int n);

/// T_free = T_osp(2|2)_{-2n} + T_sp(2n)_0 with explicit sp generators,
/// fully expanded flavors.  `casimir_shift` perturbs C2(G) (mutation
/// control; the identity must then fail).
bool numeric_verify_sp(int n, const Rational& casimir_shift = Rational(0));

}  // namespace opekit

#endif
