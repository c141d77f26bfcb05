#include <doctest.h>

#include "opekit/oracle.hpp"
#include "opekit/parser.hpp"
#include "opekit/sugawara.hpp"

using namespace opekit;

TEST_CASE("generator bases have the stated dimensions and symmetries") {
  CHECK(generator_basis(Family::su, 2).size() == 3);
  CHECK(generator_basis(Family::su, 3).size() == 8);
  CHECK(generator_basis(Family::su, 4).size() == 15);
  CHECK(generator_basis(Family::so, 3).size() == 3);
  CHECK(generator_basis(Family::so, 4).size() == 6);
  CHECK(generator_basis(Family::sp, 1).size() == 3);
  CHECK(generator_basis(Family::sp, 2).size() == 10);
  CHECK_THROWS_AS(generator_basis(Family::su, 5), std::invalid_argument);

  for (const auto& t : generator_basis(Family::su, 3)) {
    CHECK(is_hermitian(t));
    CHECK(matrix_trace(t).is_zero());
  }
  for (const auto& t : generator_basis(Family::so, 4)) {
    CHECK(is_hermitian(t));
    // imaginary antisymmetric: t^T = -t and Re t = 0
    const std::size_t m = t.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        CHECK(t[i][j].re == 0);
        CHECK(t[j][i] == GaussianRational() - t[i][j]);
      }
  }
  // sp: t^T Omega + Omega t = 0
  for (int n : {1, 2}) {
    GMat omega = symplectic_form(n);
    for (const auto& t : generator_basis(Family::sp, n)) {
      CHECK(is_hermitian(t));
      GMat tt = zero_matrix(2 * n);
      for (std::size_t i = 0; i < tt.size(); ++i)
        for (std::size_t j = 0; j < tt.size(); ++j) tt[i][j] = t[j][i];
      GMat lhs = matrix_product(tt, omega);
      GMat rhs = matrix_product(omega, t);
      for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < lhs.size(); ++j)
          CHECK(lhs[i][j] + rhs[i][j] == GaussianRational(0));
    }
  }
}

TEST_CASE("sp(2) basis matches su(2) up to basis change") {
  // both span the traceless Hermitian 2x2 matrices with the same Gram rank
  auto sp = generator_basis(Family::sp, 1);
  auto su = generator_basis(Family::su, 2);
  CHECK(sp.size() == su.size());
  CHECK(adjoint_casimir_numeric(Family::sp, 1) == adjoint_casimir_numeric(Family::su, 2));
  CHECK(sugawara_numeric(Family::sp, 1) == sugawara_numeric(Family::su, 2));
}

TEST_CASE("structure constants are totally antisymmetric") {
  CHECK(structure_constants_antisymmetric(Family::su, 2));
  CHECK(structure_constants_antisymmetric(Family::su, 3));
  CHECK(structure_constants_antisymmetric(Family::so, 4));
  CHECK(structure_constants_antisymmetric(Family::sp, 1));
  CHECK(structure_constants_antisymmetric(Family::sp, 2));
}

TEST_CASE("adjoint Casimir from the double commutator contraction") {
  CHECK(adjoint_casimir_numeric(Family::su, 2) == Rational(4));
  CHECK(adjoint_casimir_numeric(Family::su, 3) == Rational(6));
  CHECK(adjoint_casimir_numeric(Family::su, 4) == Rational(8));
  CHECK(adjoint_casimir_numeric(Family::so, 3) == Rational(2));
  CHECK(adjoint_casimir_numeric(Family::so, 4) == Rational(4));
  // derived, then used by the sp Sugawara: C2(G) = 2(N+1)
  CHECK(adjoint_casimir_numeric(Family::sp, 1) == Rational(4));
  CHECK(adjoint_casimir_numeric(Family::sp, 2) == Rational(6));
}

TEST_CASE("completeness relations by brute force") {
  for (int n : {2, 3, 4}) {
    CompletenessResult r = completeness_numeric(Family::su, n);
    CHECK(r.matches_rule);
    CHECK(r.casimir2_fund == Rational(n * n - 1, n));
    CHECK(r.level_times_dim == Rational(n * n - 1));  // C(N) = 1
  }
  for (int n : {2, 3, 4}) {
    CompletenessResult r = completeness_numeric(Family::so, n);
    CHECK(r.matches_rule);
    CHECK(r.casimir2_fund == Rational(n - 1));
    CHECK(r.level_times_dim == Rational(2 * (n * (n - 1) / 2)));  // C(N) = 2
  }
  for (int n : {1, 2}) {
    CompletenessResult r = completeness_numeric(Family::sp, n);
    CHECK(r.matches_rule);
    CHECK(r.casimir2_fund == Rational(2 * n + 1, 2));
    CHECK(r.level_times_dim == Rational(n * (2 * n + 1)));  // C(N) = 1
  }
}

TEST_CASE("flavor expansion") {
  SymbolicExpr t_free = build_stress_tensor(TensorLabel::free).expr;
  CHECK(expand_flavors(t_free, 1, 1).size() == 4);  // four kinetic terms
  CHECK(expand_flavors(density_operator(), 2, 2).size() == 8);

  // the decomposition, expanded at concrete rank, via an independent route
  SymbolicExpr diff = build_stress_tensor(TensorLabel::gl11).expr +
                      build_stress_tensor(TensorLabel::su0).expr - t_free;
  CHECK(expand_flavors(diff, 2, 2).is_zero());
  CHECK(expand_flavors(diff, 3, 3).is_zero());

  // the single-flavor quartic collapses by anticommutativity
  SymbolicExpr crossed = parse_expr("no(psi(+,i), psi(+,j), psi(-,i), psi(-,j))");
  CHECK(expand_flavors(crossed, 1, 1).is_zero());
  CHECK_FALSE(expand_flavors(crossed, 2, 2).is_zero());

  // poles are reported, free indices rejected
  SymbolicExpr so_expr = build_stress_tensor(TensorLabel::so0).expr;
  CHECK_THROWS_AS(expand_flavors(so_expr, 2, 2), pole_error);
  CHECK_THROWS_AS(expand_flavors(parse_expr("psi(+,m)"), 2, 2), std::invalid_argument);
}

TEST_CASE("explicit generators reproduce the symbolic tensors") {
  for (int n : {2, 3})
    CHECK(sugawara_numeric(Family::su, n) ==
          expand_flavors(build_stress_tensor(TensorLabel::su0).expr, n, n));
  for (int n : {3, 4})
    CHECK(sugawara_numeric(Family::so, n) ==
          expand_flavors(build_stress_tensor(TensorLabel::so0).expr, n, n));
}

TEST_CASE("multiplet tensors reproduce the symbolic super sectors") {
  for (int n : {2, 3})
    CHECK(gl11_tensor_numeric(n, n) ==
          expand_flavors(build_stress_tensor(TensorLabel::gl11).expr, n, n));
  for (int n : {3, 4})
    CHECK(osp22_tensor_numeric(n, n) ==
          expand_flavors(build_stress_tensor(TensorLabel::osp22).expr, n, n));
}

TEST_CASE("numeric decompositions from explicit generators") {
  for (int n : {2, 3})
    CHECK((free_tensor_numeric(n) - gl11_tensor_numeric(n, n) -
           sugawara_numeric(Family::su, n))
              .is_zero());
  for (int n : {3, 4})
    CHECK((free_tensor_numeric(n) - osp22_tensor_numeric(n, n) -
           sugawara_numeric(Family::so, n))
              .is_zero());
}

TEST_CASE("explicit currents commute with the multiplets") {
  CHECK(numeric_commute_check(Family::su, 2));
  CHECK(numeric_commute_check(Family::su, 3));
  CHECK(numeric_commute_check(Family::so, 3));
  CHECK(numeric_commute_check(Family::so, 4));
}

TEST_CASE("symplectic decomposition with explicit generators") {
  CHECK(numeric_verify_sp(1));
  CHECK(numeric_verify_sp(2));
  // mutated adjoint Casimir must break the identity
  CHECK_FALSE(numeric_verify_sp(1, Rational(1)));
  CHECK_FALSE(numeric_verify_sp(2, Rational(-2)));

  // sp(2) = su(2): the symplectic tensor coincides with the su engine at N=2
  CHECK(sugawara_numeric(Family::sp, 1) ==
        expand_flavors(build_stress_tensor(TensorLabel::su0).expr, 2, 2));
  CHECK(osp22_sp_tensor_numeric(1) ==
        expand_flavors(build_stress_tensor(TensorLabel::gl11).expr, 2, 2));
}

TEST_CASE("symplectic one-loop system from explicit generators") {
  // the osp(2|2)_{-2n} perturbation is marginally irrelevant with the
  // same N-independent coefficient as its so-family partner, and the
  // bosonic sector closes on -C2(G)
  for (int n : {1, 2}) {
    auto c = sp_beta_numeric(n);
    CHECK(c[0][0][0] == Rational(-2 * (n + 1)));  // beta_g = 2(N+1) g^2
    CHECK(c[1][1][1] == Rational(4));             // beta_gp = -4 gp^2
    CHECK(c[0][1][1] == 0);
    CHECK(c[1][0][0] == 0);
    CHECK(c[0][0][1] == 0);
    CHECK(c[0][1][0] == 0);
    CHECK(c[1][0][1] == 0);
    CHECK(c[1][1][0] == 0);
  }
}

TEST_CASE("numeric central charge and weights at concrete rank") {
  auto nc = numeric_context(2);
  NumericExpr t2 = free_tensor_numeric(2);
  NumericExpr quartic_pole = ope(t2, t2, kFullDepth, nc).at(4, 0);
  CHECK(quartic_pole.is_zero());

  // weight of psi+^1 under the numeric su(2)_0 tensor equals the symbolic
  // weight evaluated at N=2
  NumericExpr t_su2 = sugawara_numeric(Family::su, 2);
  Monomial psi1;
  psi1.factors.push_back(make_psi(Charge::plus, FlavorIndex::concrete(1)));
  NumericExpr field = NumericExpr::from_monomial(psi1, GaussianRational(1), nc);
  NumericExpr double_pole = ope(t_su2, field, kFullDepth, nc).at(2, 0);
  RatN symbolic_weight = (RatN::n() * RatN::n() - RatN(1)) / (RatN(2) * RatN::n() * RatN::n());
  CHECK(double_pole == GaussianRational(symbolic_weight.eval(2)) * field);
}
