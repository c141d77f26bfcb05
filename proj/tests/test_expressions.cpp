#include <doctest.h>

#include <algorithm>
#include <random>

#include "opekit/expr.hpp"
#include "opekit/parser.hpp"
#include "test_support.hpp"

using namespace opekit;

namespace {

const ExprContext<RatN>& ctx() {
  static const auto c = symbolic_context();
  return c;
}

FlavorIndex ix(const std::string& s) { return FlavorIndex::abstract(s); }

SymbolicExpr word(std::vector<FieldSymbol> f, RatN c = RatN(1)) {
  Monomial m;
  m.factors = std::move(f);
  return SymbolicExpr::from_monomial(std::move(m), std::move(c), ctx());
}

std::mt19937 rng(530901);

}  // namespace

TEST_CASE("grassmann antisymmetry of the canonical form") {
  // psi-^i psi+^i and -(psi+^i psi-^i) canonicalize identically
  SymbolicExpr a = word({make_psi(Charge::minus, ix("i")), make_psi(Charge::plus, ix("i"))});
  SymbolicExpr b = word({make_psi(Charge::plus, ix("i")), make_psi(Charge::minus, ix("i"))},
                        RatN(-1));
  CHECK(a == b);
}

TEST_CASE("delta calculus") {
  // delta_ij delta_jk -> delta_ik
  Monomial m;
  m.deltas.emplace_back(ix("i"), ix("j"));
  m.deltas.emplace_back(ix("j"), ix("k"));
  CanonicalCore core = canonicalize_core(m);
  CHECK_FALSE(core.vanishes);
  REQUIRE(core.monomial.deltas.size() == 1);
  CHECK(core.monomial.deltas[0] == DeltaFactor(ix("i"), ix("k")));

  // closed loop: delta_ii = N
  Monomial loop;
  loop.deltas.emplace_back(ix("i"), ix("i"));
  SymbolicExpr e = SymbolicExpr::from_monomial(loop, RatN(1), ctx());
  CHECK(e == SymbolicExpr::scalar(RatN::n()));

  // concrete mismatch kills the term
  Monomial dead;
  dead.deltas.emplace_back(FlavorIndex::concrete(1), FlavorIndex::concrete(2));
  CHECK(SymbolicExpr::from_monomial(dead, RatN(1), ctx()).is_zero());

  // delta applied to a field index
  SymbolicExpr contracted = SymbolicExpr::formal_product(
      SymbolicExpr::from_monomial(
          [] {
            Monomial d;
            d.deltas.emplace_back(ix("i"), ix("j"));
            return d;
          }(),
          RatN(1), ctx()),
      word({make_psi(Charge::plus, ix("j"))}), ctx());
  CHECK(contracted == word({make_psi(Charge::plus, ix("i"))}));
}

TEST_CASE("squared odd symbols vanish") {
  // (psi+^i psi+^i)(psi-^j psi-^j) is an exact Grassmann zero
  SymbolicExpr e = word({make_psi(Charge::plus, ix("i")), make_psi(Charge::plus, ix("i")),
                         make_psi(Charge::minus, ix("j")), make_psi(Charge::minus, ix("j"))});
  CHECK(e.is_zero());
  // but the crossed-index pattern survives
  SymbolicExpr crossed =
      word({make_psi(Charge::plus, ix("i")), make_psi(Charge::plus, ix("j")),
            make_psi(Charge::minus, ix("i")), make_psi(Charge::minus, ix("j"))});
  CHECK_FALSE(crossed.is_zero());
}

TEST_CASE("relabeling zeros are detected") {
  // psi+^a psi+^b beta+^a beta+^b = -itself under a<->b, hence zero
  SymbolicExpr e = word({make_psi(Charge::plus, ix("a")), make_psi(Charge::plus, ix("b")),
                         make_beta(Charge::plus, ix("a")), make_beta(Charge::plus, ix("b"))});
  CHECK(e.is_zero());
}

TEST_CASE("malformed index multiplicity") {
  Monomial m;
  m.factors = {make_psi(Charge::plus, ix("i")), make_psi(Charge::minus, ix("i")),
               make_beta(Charge::plus, ix("i"))};
  CHECK_THROWS_AS(canonicalize_core(m), malformed_index_error);
}

TEST_CASE("canonicalize is idempotent") {
  for (int trial = 0; trial < 1200; ++trial) {
    Monomial m = testsupport::random_monomial(rng);
    CanonicalCore once;
    try {
      once = canonicalize_core(m);
    } catch (const malformed_index_error&) {
      continue;
    }
    if (once.vanishes) continue;
    CanonicalCore twice = canonicalize_core(once.monomial);
    CHECK_FALSE(twice.vanishes);
    CHECK(twice.monomial == once.monomial);
    CHECK(twice.sign == 1);
    CHECK(twice.trace_power == 0);
  }
}

TEST_CASE("canonicalize is sign-consistent under factor permutations") {
  for (int trial = 0; trial < 1200; ++trial) {
    Monomial m = testsupport::random_monomial(rng, 5);
    // random adjacent transpositions with tracked Grassmann sign
    Monomial shuffled = m;
    int sign = 1;
    int swaps = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int s = 0; s < swaps && shuffled.factors.size() > 1; ++s) {
      std::size_t p = std::uniform_int_distribution<std::size_t>(
          0, shuffled.factors.size() - 2)(rng);
      if (shuffled.factors[p].is_odd() && shuffled.factors[p + 1].is_odd()) sign = -sign;
      std::swap(shuffled.factors[p], shuffled.factors[p + 1]);
    }
    CanonicalCore a, b;
    try {
      a = canonicalize_core(m);
      b = canonicalize_core(shuffled);
    } catch (const malformed_index_error&) {
      continue;
    }
    CHECK(a.vanishes == b.vanishes);
    if (a.vanishes) continue;
    CHECK(a.monomial == b.monomial);
    CHECK(a.trace_power == b.trace_power);
    CHECK(a.sign * sign == b.sign);
  }
}

TEST_CASE("equality is invariant under dummy renaming") {
  for (int trial = 0; trial < 600; ++trial) {
    Monomial m = testsupport::random_monomial(rng);
    Monomial renamed = rename_dummies(m, "fresh");
    SymbolicExpr a, b;
    try {
      a = SymbolicExpr::from_monomial(m, RatN(1), ctx());
      b = SymbolicExpr::from_monomial(renamed, RatN(1), ctx());
    } catch (const malformed_index_error&) {
      continue;
    }
    CHECK(a == b);
  }
}

TEST_CASE("expression ring basics") {
  SymbolicExpr a = testsupport::random_expr(rng);
  CHECK((a - a).is_zero());
  CHECK((a + (RatN(-1) * a)).is_zero());

  // the kinetic prefactors of the two sector tensors recombine to -1/2
  RatN n = RatN::n();
  SymbolicExpr kin = word({make_psi(Charge::minus, ix("i")), make_psi(Charge::plus, ix("i"), 1)});
  SymbolicExpr merged = (RatN(-1) / (RatN(2) * n * n)) * kin +
                        ((RatN(1) - n * n) / (RatN(2) * n * n)) * kin;
  CHECK(merged == RatN(Rational(-1, 2)) * kin);
}

TEST_CASE("scaling the quartic ghost term") {
  RatN n = RatN::n();
  SymbolicExpr quartic =
      word({make_beta(Charge::plus, ix("i")), make_beta(Charge::minus, ix("i")),
            make_beta(Charge::plus, ix("j")), make_beta(Charge::minus, ix("j"))});
  SymbolicExpr lhs = (n * n / (n - RatN(1))) * ((n - RatN(1)) / (RatN(2) * n * n) * quartic);
  CHECK(lhs == RatN(Rational(1, 2)) * quartic);
}

TEST_CASE("mirror is an involution exchanging chiralities") {
  SymbolicExpr psi = word({make_psi(Charge::plus, ix("i"))});
  SymbolicExpr mirrored = psi.mirrored(ctx());
  REQUIRE(mirrored.size() == 1);
  CHECK(mirrored.terms().begin()->first.factors[0].chirality == Chirality::antiholomorphic);
  for (int trial = 0; trial < 400; ++trial) {
    SymbolicExpr e = testsupport::random_expr(rng);
    CHECK(e.mirrored(ctx()).mirrored(ctx()) == e);
  }
}

TEST_CASE("derivative is a chirality-respecting Leibniz map") {
  SymbolicExpr h = parse_expr("no(psi(+,i), psi(-,i))");
  SymbolicExpr dh = h.derivative(Chirality::holomorphic, ctx());
  CHECK(dh == parse_expr("no(d(psi(+,i)), psi(-,i)) + no(psi(+,i), d(psi(-,i)))"));
  CHECK(h.derivative(Chirality::antiholomorphic, ctx()).is_zero());
}

TEST_CASE("grading is preserved by formal products") {
  for (int trial = 0; trial < 400; ++trial) {
    Monomial a = testsupport::random_monomial(rng, 3);
    Monomial b = testsupport::random_monomial(rng, 3);
    SymbolicExpr ea, eb;
    try {
      ea = SymbolicExpr::from_monomial(a, RatN(1), ctx());
      eb = SymbolicExpr::from_monomial(b, RatN(1), ctx());
    } catch (const malformed_index_error&) {
      continue;
    }
    SymbolicExpr prod = SymbolicExpr::formal_product(ea, eb, ctx());
    if (ea.is_zero() || eb.is_zero() || prod.is_zero()) continue;
    auto pa = ea.homogeneous_parity(), pb = eb.homogeneous_parity();
    auto pp = prod.homogeneous_parity();
    REQUIRE(pa);
    REQUIRE(pb);
    if (pp) CHECK(*pp == (*pa + *pb) % 2);
  }
}
