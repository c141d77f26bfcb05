#include "opekit/algebras.hpp"

#include <stdexcept>

namespace opekit {

namespace {

const ExprContext<RatN>& ctx() {
  static const ExprContext<RatN> c = symbolic_context();
  return c;
}

FlavorIndex ix(const std::string& name) { return FlavorIndex::abstract(name); }

SymbolicExpr word(std::vector<FieldSymbol> fs, RatN coeff = RatN(1)) {
  Monomial m;
  m.factors = std::move(fs);
  return SymbolicExpr::from_monomial(std::move(m), std::move(coeff), ctx());
}

/// The matrix-valued current block s_-^i s_+^j for one species.
SymbolicExpr current_block(Species s, const std::string& i, const std::string& j) {
  auto mk = s == Species::psi ? make_psi : make_beta;
  return word({mk(Charge::minus, ix(i), 0, Chirality::holomorphic),
               mk(Charge::plus, ix(j), 0, Chirality::holomorphic)});
}

std::vector<std::pair<Species, Species>> species_pairs(SpeciesChoice choice) {
  switch (choice) {
    case SpeciesChoice::fermion:
      return {{Species::psi, Species::psi}};
    case SpeciesChoice::ghost:
      return {{Species::beta, Species::beta}};
    case SpeciesChoice::both:
      return {{Species::psi, Species::psi},
              {Species::psi, Species::beta},
              {Species::beta, Species::psi},
              {Species::beta, Species::beta}};
  }
  return {};
}

struct DeltaPattern {
  // pairs of slot names contracted by the two deltas
  std::pair<const char*, const char*> first, second;
};

Monomial delta_monomial(const std::string& a1, const std::string& a2, const std::string& b1,
                        const std::string& b2) {
  Monomial m;
  m.deltas.emplace_back(ix(a1), ix(a2));
  m.deltas.emplace_back(ix(b1), ix(b2));
  return m;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::su:
      return "su";
    case Family::so:
      return "so";
    case Family::sp:
      return "sp";
  }
  return "?";
}

AlgebraSpec AlgebraSpec::su_family() {
  AlgebraSpec s;
  s.family = Family::su;
  s.casimir_fund = RatN(1);
  s.casimir2_fund = (RatN::n() * RatN::n() - RatN(1)) / RatN::n();
  s.casimir2_adjoint = RatN(2) * RatN::n();
  s.c_exchange = RatN(1);
  s.c_trace = RatN(-1) / RatN::n();
  s.c_antisym = RatN(0);
  return s;
}

AlgebraSpec AlgebraSpec::so_family() {
  AlgebraSpec s;
  s.family = Family::so;
  s.casimir_fund = RatN(2);
  s.casimir2_fund = RatN::n() - RatN(1);
  s.casimir2_adjoint = RatN(2) * (RatN::n() - RatN(2));
  s.c_exchange = RatN(1);
  s.c_trace = RatN(0);
  s.c_antisym = RatN(-1);
  return s;
}

AlgebraSpec AlgebraSpec::for_family(Family f) {
  switch (f) {
    case Family::su:
      return su_family();
    case Family::so:
      return so_family();
    case Family::sp:
      break;
  }
  throw std::invalid_argument("sp(2N) has no symbolic completeness rule here; use the oracle");
}

Bilocal casimir_bilocal(const AlgebraSpec& spec, SpeciesChoice species) {
  if (spec.family == Family::sp)
    throw std::invalid_argument("sp(2N) casimir bilocal is numeric-only");
  Bilocal out;
  for (auto [sl, sr] : species_pairs(species)) {
    SymbolicExpr left = current_block(sl, "i", "j");
    SymbolicExpr right = current_block(sr, "k", "l");
    if (!spec.c_exchange.is_zero())
      out.push_back({left, right, delta_monomial("i", "l", "j", "k"), spec.c_exchange});
    if (!spec.c_trace.is_zero())
      out.push_back({left, right, delta_monomial("i", "j", "k", "l"), spec.c_trace});
    if (!spec.c_antisym.is_zero())
      out.push_back({left, right, delta_monomial("i", "k", "j", "l"), spec.c_antisym});
  }
  return out;
}

SymbolicExpr casimir_normal_product(const AlgebraSpec& spec, SpeciesChoice species) {
  SymbolicExpr sum;
  for (const auto& term : casimir_bilocal(spec, species)) {
    SymbolicExpr np = normal_product(term.left, term.right, ctx());
    SymbolicExpr prefactor = SymbolicExpr::from_monomial(term.prefactor, term.coeff, ctx());
    sum = sum + SymbolicExpr::formal_product(prefactor, np, ctx());
  }
  return sum;
}

LaurentOPE<RatN> casimir_ope(const AlgebraSpec& spec, SpeciesChoice species) {
  LaurentOPE<RatN> out(kFullDepth);
  for (const auto& term : casimir_bilocal(spec, species)) {
    LaurentOPE<RatN> l = ope(term.left, term.right, kFullDepth, ctx());
    SymbolicExpr prefactor = SymbolicExpr::from_monomial(term.prefactor, term.coeff, ctx());
    for (const auto& [key, entry] : l.entries()) {
      SymbolicExpr scaled = SymbolicExpr::formal_product(prefactor, entry, ctx());
      for (const auto& [m, c] : scaled.terms())
        out.accumulate(key.first, key.second, m, c, ctx());
    }
  }
  out.prune();
  return out;
}

SymbolicExpr casimir_left_right(const AlgebraSpec& spec) {
  SymbolicExpr sum;
  for (const auto& term : casimir_bilocal(spec, SpeciesChoice::both)) {
    SymbolicExpr prefactor = SymbolicExpr::from_monomial(term.prefactor, term.coeff, ctx());
    SymbolicExpr local =
        SymbolicExpr::formal_product(term.left, term.right.mirrored(ctx()), ctx());
    sum = sum + SymbolicExpr::formal_product(prefactor, local, ctx());
  }
  return sum;
}

const SymbolicExpr* CurrentMultiplet::find(const std::string& name) const {
  for (const auto& [n, e] : members)
    if (n == name) return &e;
  return nullptr;
}

CurrentMultiplet gl11_multiplet() {
  CurrentMultiplet m;
  m.members.emplace_back("H", word({make_psi(Charge::plus, ix("i")),
                                    make_psi(Charge::minus, ix("i"))}));
  m.members.emplace_back("J", word({make_beta(Charge::plus, ix("i")),
                                    make_beta(Charge::minus, ix("i"))}));
  m.members.emplace_back("S+", word({make_psi(Charge::plus, ix("i")),
                                     make_beta(Charge::minus, ix("i"))}));
  m.members.emplace_back("S-", word({make_psi(Charge::minus, ix("i")),
                                     make_beta(Charge::plus, ix("i"))},
                                    RatN(-1)));
  return m;
}

CurrentMultiplet osp22_multiplet() {
  CurrentMultiplet m = gl11_multiplet();
  m.members.emplace_back("J+", word({make_beta(Charge::minus, ix("i")),
                                     make_beta(Charge::minus, ix("i"))}));
  m.members.emplace_back("J-", word({make_beta(Charge::plus, ix("i")),
                                     make_beta(Charge::plus, ix("i"))}));
  m.members.emplace_back("Shat+", word({make_psi(Charge::minus, ix("i")),
                                        make_beta(Charge::minus, ix("i"))}));
  m.members.emplace_back("Shat-", word({make_psi(Charge::plus, ix("i")),
                                        make_beta(Charge::plus, ix("i"))}));
  return m;
}

namespace {

/// Projection of a free-index tensor X_ij onto the generator directions:
/// su kills it iff X is pure trace; so kills it iff X is symmetric.
bool projection_vanishes(const AlgebraSpec& spec, const SymbolicExpr& x, const std::string& i,
                         const std::string& j) {
  if (spec.family == Family::so) {
    SymbolicExpr swapped;
    for (const auto& [m, c] : x.terms()) {
      Monomial renamed = rename_free_index(m, i, "#swap");
      renamed = rename_free_index(renamed, j, i);
      renamed = rename_free_index(renamed, "#swap", j);
      swapped.accumulate(std::move(renamed), c, ctx());
    }
    return x == swapped;
  }
  // su: X_ij = (1/N) d_ij tr X
  Monomial dm;
  dm.deltas.emplace_back(ix(i), ix(j));
  SymbolicExpr delta_ij = SymbolicExpr::from_monomial(dm, RatN(1), ctx());
  SymbolicExpr trace = SymbolicExpr::formal_product(delta_ij, x, ctx());
  SymbolicExpr pure_trace =
      (RatN(1) / RatN::n()) * SymbolicExpr::formal_product(delta_ij, trace, ctx());
  return x == pure_trace;
}

}  // namespace

bool commutes_with_currents(const AlgebraSpec& spec, const SymbolicExpr& candidate) {
  SymbolicExpr l_matrix =
      current_block(Species::psi, "i", "j") + current_block(Species::beta, "i", "j");
  LaurentOPE<RatN> l = ope(l_matrix, candidate, kFullDepth, ctx());
  for (const auto& [key, entry] : l.entries()) {
    if (key.first == 0 && key.second == 0) continue;
    if (entry.is_zero()) continue;
    if (!projection_vanishes(spec, entry, "i", "j")) return false;
  }
  return true;
}

bool check_mutual_commute(const AlgebraSpec& spec, const CurrentMultiplet& multiplet) {
  for (const auto& [name, member] : multiplet.members) {
    (void)name;
    if (!commutes_with_currents(spec, member)) return false;
  }
  return true;
}

WeightOneReport weight_one_primary_check(const SymbolicExpr& stress,
                                         const CurrentMultiplet& multiplet) {
  WeightOneReport report;
  for (const auto& [name, member] : multiplet.members) {
    (void)name;
    LaurentOPE<RatN> l = ope(stress, member, kFullDepth, ctx());
    if (l.at(2, 0) != member) report.ok = false;
    if (l.at(1, 0) != member.derivative(Chirality::holomorphic, ctx())) report.ok = false;
    for (const auto& [key, entry] : l.entries()) {
      if (key.first < 3 || entry.is_zero()) continue;
      if (entry.scalar_only())
        report.scalar_third_pole = true;
      else
        report.ok = false;
    }
  }
  return report;
}

bool all_poles_vanish(const SymbolicExpr& stress, const CurrentMultiplet& multiplet) {
  for (const auto& [name, member] : multiplet.members) {
    (void)name;
    if (!ope(stress, member, kFullDepth, ctx()).regular()) return false;
  }
  return true;
}

}  // namespace opekit
