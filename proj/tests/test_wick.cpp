#include <doctest.h>

#include <future>
#include <random>

#include "opekit/oracle.hpp"
#include "opekit/parser.hpp"
#include "opekit/wick.hpp"
#include "test_support.hpp"

using namespace opekit;

namespace {

const ExprContext<RatN>& ctx() {
  static const auto c = symbolic_context();
  return c;
}

FlavorIndex ix(const std::string& s) { return FlavorIndex::abstract(s); }

SymbolicExpr field(Species sp, Charge q, const std::string& name, int deriv = 0,
                   Chirality chi = Chirality::holomorphic) {
  Monomial m;
  m.factors.push_back(FieldSymbol{chi, sp, q, deriv, ix(name)});
  return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
}

SymbolicExpr delta_ij(const std::string& a, const std::string& b) {
  Monomial m;
  m.deltas.emplace_back(ix(a), ix(b));
  return SymbolicExpr::from_monomial(std::move(m), RatN(1), ctx());
}

std::mt19937 rng(424243);

}  // namespace

TEST_CASE("propagator table") {
  // <psi-(z) psi+(w)> = <psi+(z) psi-(w)> = delta/(z-w)
  auto psi_mp = ope(field(Species::psi, Charge::minus, "i"),
                    field(Species::psi, Charge::plus, "j"), kFullDepth, ctx());
  CHECK(psi_mp.at(1, 0) == delta_ij("i", "j"));
  auto psi_pm = ope(field(Species::psi, Charge::plus, "i"),
                    field(Species::psi, Charge::minus, "j"), kFullDepth, ctx());
  CHECK(psi_pm.at(1, 0) == delta_ij("i", "j"));
  // <beta+(z) beta-(w)> = -<beta-(z) beta+(w)> = delta/(z-w)
  auto beta_pm = ope(field(Species::beta, Charge::plus, "i"),
                     field(Species::beta, Charge::minus, "j"), kFullDepth, ctx());
  CHECK(beta_pm.at(1, 0) == delta_ij("i", "j"));
  auto beta_mp = ope(field(Species::beta, Charge::minus, "i"),
                     field(Species::beta, Charge::plus, "j"), kFullDepth, ctx());
  CHECK(beta_mp.at(1, 0) == RatN(-1) * delta_ij("i", "j"));

  // same charge, cross species, cross chirality: all regular
  CHECK(ope(field(Species::psi, Charge::plus, "i"), field(Species::psi, Charge::plus, "j"),
            kFullDepth, ctx())
            .regular());
  CHECK(ope(field(Species::psi, Charge::plus, "i"), field(Species::beta, Charge::minus, "j"),
            kFullDepth, ctx())
            .regular());
  CHECK(ope(field(Species::psi, Charge::plus, "i", 0, Chirality::antiholomorphic),
            field(Species::psi, Charge::minus, "j"), kFullDepth, ctx())
            .regular());

  // the regular product of two like-charge fermions is the formal word
  auto like = ope(field(Species::psi, Charge::plus, "i"), field(Species::psi, Charge::plus, "j"),
                  kFullDepth, ctx());
  CHECK(like.at(0, 0) == parse_expr("no(psi(+,i), psi(+,j))"));
}

TEST_CASE("derivative rule") {
  // <d psi-(z) psi+(w)> = -delta/(z-w)^2
  auto l = ope(field(Species::psi, Charge::minus, "i", 1),
               field(Species::psi, Charge::plus, "j"), kFullDepth, ctx());
  CHECK(l.at(2, 0) == RatN(-1) * delta_ij("i", "j"));
  CHECK(l.at(1, 0).is_zero());

  // randomized: <d^m X d^k Y> = (-1)^m (m+k)! delta / (z-w)^{m+k+1}
  for (int trial = 0; trial < 1000; ++trial) {
    int m = std::uniform_int_distribution<int>(0, 3)(rng);
    int k = std::uniform_int_distribution<int>(0, 3)(rng);
    bool ghosts = std::uniform_int_distribution<int>(0, 1)(rng) != 0;
    Species sp = ghosts ? Species::beta : Species::psi;
    Charge first = std::uniform_int_distribution<int>(0, 1)(rng) ? Charge::plus : Charge::minus;
    auto l2 = ope(field(sp, first, "i", m), field(sp, opposite(first), "j", k), kFullDepth,
                  ctx());
    long factorial = 1;
    for (int t = 2; t <= m + k; ++t) factorial *= t;
    long amp = (m % 2 == 0 ? 1 : -1) * factorial;
    if (ghosts && first == Charge::minus) amp = -amp;
    CHECK(l2.at(m + k + 1, 0) == RatN(static_cast<int>(amp)) * delta_ij("i", "j"));
    CHECK(l2.max_pole_z() == m + k + 1);  // the single contraction is the only pole
  }
}

TEST_CASE("free stress tensor acting on the fundamental fields") {
  SymbolicExpr t = parse_expr("T_free");
  SymbolicExpr psi = parse_expr("psi(+,m)");
  auto l = ope(t, psi, kFullDepth, ctx());
  CHECK(l.at(2, 0) == RatN(Rational(1, 2)) * psi);
  CHECK(l.at(1, 0) == psi.derivative(Chirality::holomorphic, ctx()));
  CHECK(l.at(3, 0).is_zero());

  auto tt = ope(t, t, kFullDepth, ctx());
  CHECK(tt.at(4, 0).is_zero());  // central charge zero
  CHECK(tt.at(3, 0).is_zero());
  CHECK(tt.at(2, 0) == RatN(2) * t);
}

TEST_CASE("normal product basics") {
  // unit: no(1, a) = a
  SymbolicExpr one = SymbolicExpr::scalar(RatN(1));
  SymbolicExpr a = parse_expr("no(psi(+,i), psi(-,i))");
  CHECK(normal_product(one, a, ctx()) == a);
  CHECK(normal_product(a, one, ctx()) == a);

  // concrete two-field product keeps only operator content at (0,0)
  SymbolicExpr lhs = parse_expr("psi(+,1)");
  SymbolicExpr rhs = parse_expr("psi(-,1)");
  CHECK(normal_product(lhs, rhs, ctx()) == parse_expr("no(psi(+,1), psi(-,1))"));
}

TEST_CASE("contraction subset enumeration count") {
  // sum_k C(s,k) C(t,k) k! subsets for fully contractible clusters
  for (int trial = 0; trial < 60; ++trial) {
    int s = std::uniform_int_distribution<int>(1, 4)(rng);
    int t = std::uniform_int_distribution<int>(1, 4)(rng);
    Monomial ma, mb;
    for (int p = 0; p < s; ++p)
      ma.factors.push_back(make_psi(Charge::plus, FlavorIndex::concrete(p + 1)));
    for (int p = 0; p < t; ++p)
      mb.factors.push_back(make_psi(Charge::minus, FlavorIndex::concrete(p + 1)));
    SymbolicExpr a = SymbolicExpr::from_monomial(ma, RatN(1), ctx());
    SymbolicExpr b = SymbolicExpr::from_monomial(mb, RatN(1), ctx());
    OpeStats stats;
    ope(a, b, kFullDepth, ctx(), &stats);
    unsigned long long expected = 0;
    auto choose = [](int n, int k) {
      unsigned long long r = 1;
      for (int i = 0; i < k; ++i) r = r * static_cast<unsigned long long>(n - i) /
                                       static_cast<unsigned long long>(i + 1);
      return r;
    };
    for (int k = 0; k <= std::min(s, t); ++k) {
      unsigned long long fact = 1;
      for (int i = 2; i <= k; ++i) fact *= static_cast<unsigned long long>(i);
      expected += choose(s, k) * choose(t, k) * fact;
    }
    CHECK(stats.matchings == expected);
  }
}

TEST_CASE("bilinearity of the kernel") {
  for (int trial = 0; trial < 200; ++trial) {
    SymbolicExpr a1 = testsupport::random_expr(rng, 2, 2);
    SymbolicExpr a2 = testsupport::random_expr(rng, 2, 2);
    SymbolicExpr b = testsupport::random_expr(rng, 2, 2);
    RatN alpha(std::uniform_int_distribution<int>(-3, 3)(rng));
    auto lhs = ope(alpha * a1 + a2, b, kFullDepth, ctx());
    auto r1 = ope(a1, b, kFullDepth, ctx());
    auto r2 = ope(a2, b, kFullDepth, ctx());
    int pmax = std::max(lhs.max_pole_z(), std::max(r1.max_pole_z(), r2.max_pole_z()));
    int qmax = std::max(lhs.max_pole_zbar(), std::max(r1.max_pole_zbar(), r2.max_pole_zbar()));
    for (int p = 0; p <= pmax; ++p)
      for (int q = 0; q <= qmax; ++q)
        CHECK(lhs.at(p, q) == alpha * r1.at(p, q) + r2.at(p, q));
  }
}

TEST_CASE("chirality factorization") {
  for (int trial = 0; trial < 200; ++trial) {
    SymbolicExpr a = testsupport::random_expr(rng, 2, 3, /*allow_antiholomorphic=*/false);
    SymbolicExpr b = testsupport::random_expr(rng, 2, 3, /*allow_antiholomorphic=*/false);
    auto l = ope(a, b, kFullDepth, ctx());
    for (const auto& [key, entry] : l.entries()) {
      if (key.second > 0) CHECK(entry.is_zero());
    }
  }
}

TEST_CASE("graded symmetry of the expansion") {
  CHECK(graded_symmetry_check(field(Species::psi, Charge::minus, "i"),
                              field(Species::psi, Charge::plus, "j"), ctx()));
  SymbolicExpr h = parse_expr("H");
  SymbolicExpr j = parse_expr("J");
  CHECK(graded_symmetry_check(h, j, ctx()));
  CHECK(graded_symmetry_check(h, h, ctx()));
  SymbolicExpr t = parse_expr("T_free");
  CHECK(graded_symmetry_check(t, t, ctx()));
  CHECK(graded_symmetry_check(parse_expr("S+"), parse_expr("S-"), ctx()));

  int done = 0;
  for (int trial = 0; trial < 4000 && done < 1000; ++trial) {
    Monomial ma = testsupport::random_monomial(rng, 3);
    Monomial mb = testsupport::random_monomial(rng, 3);
    SymbolicExpr a, b;
    try {
      a = SymbolicExpr::from_monomial(ma, RatN(1), ctx());
      b = SymbolicExpr::from_monomial(mb, RatN(1), ctx());
    } catch (const malformed_index_error&) {
      continue;
    }
    if (a.is_zero() || b.is_zero()) continue;
    ++done;
    CHECK(graded_symmetry_check(a, b, ctx()));
  }
  CHECK(done == 1000);
}

TEST_CASE("flavor expansion commutes with the kernel") {
  // expand_flavors(ope(a, b)) must equal ope(expand(a), expand(b)):
  // a differential check of delta calculus, traces, signs, and Taylor
  // terms against brute-force concrete enumeration at rank 2.
  const int rank = 2;
  auto nctx = numeric_context(rank);
  auto random_closed = [&](std::mt19937& gen) {
    Monomial m;
    int nf = std::uniform_int_distribution<int>(1, 3)(gen);
    for (int k = 0; k < nf; ++k) m.factors.push_back(testsupport::random_field(gen, 1));
    // close the index structure: pair some positions with fresh dummies,
    // make the rest concrete
    int fresh = 0;
    std::vector<int> open;
    for (int k = 0; k < nf; ++k) open.push_back(k);
    std::shuffle(open.begin(), open.end(), gen);
    while (open.size() >= 2 && std::uniform_int_distribution<int>(0, 1)(gen)) {
      std::string name = "d" + std::to_string(fresh++);
      m.factors[static_cast<std::size_t>(open.back())].index = FlavorIndex::abstract(name);
      open.pop_back();
      m.factors[static_cast<std::size_t>(open.back())].index = FlavorIndex::abstract(name);
      open.pop_back();
    }
    for (int k : open)
      m.factors[static_cast<std::size_t>(k)].index =
          FlavorIndex::concrete(std::uniform_int_distribution<int>(1, rank)(gen));
    return m;
  };
  std::mt19937 gen(90210);
  int done = 0;
  for (int trial = 0; trial < 600 && done < 250; ++trial) {
    SymbolicExpr a = SymbolicExpr::from_monomial(random_closed(gen), RatN(1), ctx());
    SymbolicExpr b = SymbolicExpr::from_monomial(random_closed(gen), RatN(1), ctx());
    if (a.is_zero() || b.is_zero()) continue;
    ++done;
    NumericExpr an = expand_flavors(a, rank, rank);
    NumericExpr bn = expand_flavors(b, rank, rank);
    LaurentOPE<RatN> symbolic = ope(a, b, kFullDepth, ctx());
    LaurentOPE<GaussianRational> numeric = ope(an, bn, kFullDepth, nctx);
    int pmax = std::max(symbolic.max_pole_z(), numeric.max_pole_z());
    int qmax = std::max(symbolic.max_pole_zbar(), numeric.max_pole_zbar());
    for (int p = 0; p <= pmax; ++p)
      for (int q = 0; q <= qmax; ++q)
        CHECK(expand_flavors(symbolic.at(p, q), rank, rank) == numeric.at(p, q));
  }
  CHECK(done == 250);
}

TEST_CASE("concurrent evaluation is deterministic") {
  // immutable inputs, canonical merge: parallel runs agree entrywise
  SymbolicExpr t = parse_expr("T_free");
  auto baseline = ope(t, t, kFullDepth, ctx());
  std::vector<std::future<LaurentOPE<RatN>>> runs;
  for (int k = 0; k < 4; ++k)
    runs.push_back(std::async(std::launch::async,
                              [&t] { return ope(t, t, kFullDepth, ctx()); }));
  for (auto& run : runs) {
    LaurentOPE<RatN> l = run.get();
    CHECK(l.entries().size() == baseline.entries().size());
    for (const auto& [key, entry] : baseline.entries())
      CHECK(l.at(key.first, key.second) == entry);
  }
}

TEST_CASE("depth truncation is monotone") {
  SymbolicExpr t = parse_expr("T_free");
  auto truncated = ope(t, t, 1, ctx());
  auto full = ope(t, t, kFullDepth, ctx());
  // pole entries above the truncation horizon agree
  CHECK(truncated.at(4, 0) == full.at(4, 0));
  CHECK(truncated.at(3, 0) == full.at(3, 0));
  // depth metadata is recorded
  CHECK(truncated.depth() == 1);
}
