#include <doctest.h>

#include "opekit/algebras.hpp"
#include "opekit/parser.hpp"
#include "opekit/sugawara.hpp"

using namespace opekit;

namespace {

const ExprContext<RatN>& ctx() {
  static const auto c = symbolic_context();
  return c;
}

FlavorIndex ix(const std::string& s) { return FlavorIndex::abstract(s); }

SymbolicExpr delta_pair(const std::string& a, const std::string& b, const std::string& c,
                        const std::string& d) {
  Monomial m;
  m.deltas.emplace_back(ix(a), ix(b));
  m.deltas.emplace_back(ix(c), ix(d));
  return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
}

SymbolicExpr delta_one(const std::string& a, const std::string& b) {
  Monomial m;
  m.deltas.emplace_back(ix(a), ix(b));
  return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
}

/// The completeness right-hand side t^a_ij t^a_kl as a delta expression.
SymbolicExpr completeness_expr(const AlgebraSpec& spec) {
  return spec.c_exchange * delta_pair("i", "l", "j", "k") +
         spec.c_trace * delta_pair("i", "j", "k", "l") +
         spec.c_antisym * delta_pair("i", "k", "j", "l");
}

}  // namespace

TEST_CASE("completeness self-consistency: Casimir contraction") {
  for (const AlgebraSpec& spec : {AlgebraSpec::su_family(), AlgebraSpec::so_family()}) {
    // contracting j with k yields C2(N) delta_il
    SymbolicExpr contracted =
        SymbolicExpr::formal_product(delta_one("j", "k"), completeness_expr(spec), ctx());
    CHECK(contracted == spec.casimir2_fund * delta_one("i", "l"));
    // contracting i with j yields zero (tracelessness / antisymmetry)
    SymbolicExpr traced =
        SymbolicExpr::formal_product(delta_one("i", "j"), completeness_expr(spec), ctx());
    CHECK(traced.is_zero());
  }
}

TEST_CASE("sp has no symbolic completeness") {
  CHECK_THROWS_AS(AlgebraSpec::for_family(Family::sp), std::invalid_argument);
  AlgebraSpec fake = AlgebraSpec::su_family();
  fake.family = Family::sp;
  CHECK_THROWS_AS(casimir_bilocal(fake, SpeciesChoice::both), std::invalid_argument);
}

TEST_CASE("casimir bilocal double pole carries C(N) per current") {
  // fermion-only su bilocal: scalar double pole = C(N) |G| = N^2 - 1
  auto su = casimir_ope(AlgebraSpec::su_family(), SpeciesChoice::fermion);
  RatN n = RatN::n();
  CHECK(su.at(2, 0) == SymbolicExpr::scalar(n * n - RatN(1)));
  // so: C(N) |G| = 2 * N(N-1)/2 = N(N-1)
  auto so = casimir_ope(AlgebraSpec::so_family(), SpeciesChoice::fermion);
  CHECK(so.at(2, 0) == SymbolicExpr::scalar(n * (n - RatN(1))));
  // ghost-only bilocal carries the opposite level
  auto ghost = casimir_ope(AlgebraSpec::su_family(), SpeciesChoice::ghost);
  CHECK(ghost.at(2, 0) == SymbolicExpr::scalar(RatN(1) - n * n));
}

TEST_CASE("level-zero bilocal is pole-free") {
  // sum_a L^a(z) L^a(w) for the fermion+ghost currents: all poles cancel
  CHECK(casimir_ope(AlgebraSpec::su_family(), SpeciesChoice::both).regular());
  CHECK(casimir_ope(AlgebraSpec::so_family(), SpeciesChoice::both).regular());
}

TEST_CASE("multiplet builders match their defining bilinears") {
  CurrentMultiplet gl = gl11_multiplet();
  CHECK(gl.members.size() == 4);
  CHECK(*gl.find("H") == parse_expr("no(psi(+,i), psi(-,i))"));
  CHECK(*gl.find("J") == parse_expr("no(beta(+,i), beta(-,i))"));
  CHECK(*gl.find("S+") == parse_expr("no(psi(+,i), beta(-,i))"));
  CHECK(*gl.find("S-") == parse_expr("-no(psi(-,i), beta(+,i))"));
  CurrentMultiplet osp = osp22_multiplet();
  CHECK(osp.members.size() == 8);
  CHECK(*osp.find("J+") == parse_expr("no(beta(-,i), beta(-,i))"));
  CHECK(*osp.find("J-") == parse_expr("no(beta(+,i), beta(+,i))"));
  CHECK(*osp.find("Shat+") == parse_expr("no(psi(-,i), beta(-,i))"));
  CHECK(*osp.find("Shat-") == parse_expr("no(psi(+,i), beta(+,i))"));
}

TEST_CASE("mutual commutation of the sectors") {
  CHECK(check_mutual_commute(AlgebraSpec::su_family(), gl11_multiplet()));
  CHECK(check_mutual_commute(AlgebraSpec::so_family(), osp22_multiplet()));
}

TEST_CASE("negative control: J+ is not an su-singlet companion") {
  // recorded engine result: the trace part of the su completeness makes
  // the OPE of the matrix current with beta-beta non-regular
  SymbolicExpr jplus = *osp22_multiplet().find("J+");
  CHECK_FALSE(commutes_with_currents(AlgebraSpec::su_family(), jplus));
  CHECK(commutes_with_currents(AlgebraSpec::so_family(), jplus));
}

TEST_CASE("weight-one primary checks") {
  SymbolicExpr t_free = build_stress_tensor(TensorLabel::free).expr;
  SymbolicExpr t_gl = build_stress_tensor(TensorLabel::gl11).expr;
  SymbolicExpr t_osp = build_stress_tensor(TensorLabel::osp22).expr;
  SymbolicExpr t_su = build_stress_tensor(TensorLabel::su0).expr;
  SymbolicExpr t_so = build_stress_tensor(TensorLabel::so0).expr;

  CHECK(weight_one_primary_check(t_free, gl11_multiplet()).ok);
  CHECK(weight_one_primary_check(t_free, osp22_multiplet()).ok);
  CHECK(weight_one_primary_check(t_gl, gl11_multiplet()).ok);
  CHECK(weight_one_primary_check(t_osp, osp22_multiplet()).ok);

  // in the commuting sector the multiplet has weight zero: no poles at all
  CHECK(all_poles_vanish(t_su, gl11_multiplet()));
  CHECK(all_poles_vanish(t_so, osp22_multiplet()));

  // control: T_su0 does not see the osp-only currents as primaries
  CHECK_FALSE(weight_one_primary_check(t_su, gl11_multiplet()).ok);
}

TEST_CASE("multiplet closure under the OPE") {
  // poles of ope(K_m, K_n) contain only members, scalars, and derivatives
  CurrentMultiplet osp = osp22_multiplet();
  std::vector<SymbolicExpr> span;
  span.push_back(SymbolicExpr::scalar(RatN(1)));
  for (const auto& [name, member] : osp.members) {
    (void)name;
    span.push_back(member);
    span.push_back(member.derivative(Chirality::holomorphic, ctx()));
  }
  auto in_span = [&](const SymbolicExpr& x) {
    // exact Gaussian elimination over the monomial space
    std::vector<Monomial> monos;
    auto note = [&](const Monomial& m) {
      for (const auto& k : monos)
        if (k == m) return;
      monos.push_back(m);
    };
    for (const auto& b : span)
      for (const auto& [m, c] : b.terms()) note(m);
    for (const auto& [m, c] : x.terms()) note(m);
    std::vector<std::vector<RatN>> a(monos.size(), std::vector<RatN>(span.size() + 1));
    for (std::size_t r = 0; r < monos.size(); ++r) {
      for (std::size_t c = 0; c < span.size(); ++c) a[r][c] = span[c].coefficient(monos[r]);
      a[r][span.size()] = x.coefficient(monos[r]);
    }
    std::size_t prow = 0;
    for (std::size_t c = 0; c < span.size() && prow < monos.size(); ++c) {
      std::size_t sel = prow;
      while (sel < monos.size() && a[sel][c].is_zero()) ++sel;
      if (sel == monos.size()) continue;
      std::swap(a[sel], a[prow]);
      RatN inv = RatN(1) / a[prow][c];
      for (auto& v : a[prow]) v = v * inv;
      for (std::size_t r = 0; r < monos.size(); ++r) {
        if (r == prow || a[r][c].is_zero()) continue;
        RatN f = a[r][c];
        for (std::size_t k = 0; k <= span.size(); ++k) a[r][k] = a[r][k] - f * a[prow][k];
      }
      ++prow;
    }
    for (std::size_t r = prow; r < monos.size(); ++r)
      if (!a[r][span.size()].is_zero()) return false;
    return true;
  };
  for (const auto& [name_m, km] : osp.members)
    for (const auto& [name_n, kn] : osp.members) {
      (void)name_m;
      (void)name_n;
      LaurentOPE<RatN> l = ope(km, kn, kFullDepth, ctx());
      for (const auto& [key, entry] : l.entries()) {
        if (key.first == 0 || entry.is_zero()) continue;
        CHECK(in_span(entry));
      }
    }
}
