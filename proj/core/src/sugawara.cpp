#include "opekit/sugawara.hpp"

#include <sstream>
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

SymbolicExpr np(const SymbolicExpr& a, const SymbolicExpr& b) {
  return normal_product(a, b, ctx());
}

/// psi-^i d psi+^i + psi+^i d psi-^i + beta-^i d beta+^i - beta+^i d beta-^i
SymbolicExpr kinetic_pattern() {
  return word({make_psi(Charge::minus, ix("i")), make_psi(Charge::plus, ix("i"), 1)}) +
         word({make_psi(Charge::plus, ix("i")), make_psi(Charge::minus, ix("i"), 1)}) +
         word({make_beta(Charge::minus, ix("i")), make_beta(Charge::plus, ix("i"), 1)}) +
         word({make_beta(Charge::plus, ix("i")), make_beta(Charge::minus, ix("i"), 1)}, RatN(-1));
}

SymbolicExpr gl11_sugawara() {
  CurrentMultiplet k = gl11_multiplet();
  const SymbolicExpr &h = *k.find("H"), &j = *k.find("J");
  const SymbolicExpr &sp = *k.find("S+"), &sm = *k.find("S-");
  RatN n = RatN::n();
  SymbolicExpr first = np(j, j) - np(h, h) + np(sp, sm) - np(sm, sp);
  SymbolicExpr e = h - j;
  SymbolicExpr second = np(e, e);
  return (RatN(-1) / (RatN(2) * n)) * first + (RatN(1) / (RatN(2) * n * n)) * second;
}

SymbolicExpr osp22_sugawara() {
  CurrentMultiplet k = osp22_multiplet();
  const SymbolicExpr &h = *k.find("H"), &j = *k.find("J");
  const SymbolicExpr &sp = *k.find("S+"), &sm = *k.find("S-");
  const SymbolicExpr &jp = *k.find("J+"), &jm = *k.find("J-");
  const SymbolicExpr &shp = *k.find("Shat+"), &shm = *k.find("Shat-");
  RatN n = RatN::n();
  SymbolicExpr casimir = np(j, j) - np(h, h) -
                         (RatN(1) / RatN(2)) * (np(jp, jm) + np(jm, jp)) +
                         (np(sp, sm) - np(sm, sp)) + (np(shm, shp) - np(shp, shm));
  return (RatN(1) / (RatN(2) * (RatN(2) - n))) * casimir;
}

}  // namespace

std::string tensor_label_name(TensorLabel label) {
  switch (label) {
    case TensorLabel::free:
      return "free";
    case TensorLabel::su0:
      return "su0";
    case TensorLabel::so0:
      return "so0";
    case TensorLabel::gl11:
      return "gl11";
    case TensorLabel::osp22:
      return "osp22";
  }
  return "?";
}

StressTensor build_stress_tensor(TensorLabel label) {
  switch (label) {
    case TensorLabel::free:
      return {label, (RatN(-1) / RatN(2)) * kinetic_pattern()};
    case TensorLabel::su0: {
      AlgebraSpec spec = AlgebraSpec::su_family();
      SymbolicExpr sum = casimir_normal_product(spec, SpeciesChoice::both);
      return {label, (RatN(1) / spec.casimir2_adjoint) * sum};
    }
    case TensorLabel::so0: {
      AlgebraSpec spec = AlgebraSpec::so_family();
      SymbolicExpr sum = casimir_normal_product(spec, SpeciesChoice::both);
      return {label, (RatN(1) / spec.casimir2_adjoint) * sum};
    }
    case TensorLabel::gl11:
      return {label, gl11_sugawara()};
    case TensorLabel::osp22:
      return {label, osp22_sugawara()};
  }
  throw std::invalid_argument("unknown stress tensor label");
}

SymbolicExpr decomposition_difference(Family family) {
  if (family == Family::sp)
    throw std::invalid_argument("sp decomposition is validated numerically; see the oracle");
  TensorLabel super = family == Family::su ? TensorLabel::gl11 : TensorLabel::osp22;
  TensorLabel boson = family == Family::su ? TensorLabel::su0 : TensorLabel::so0;
  return build_stress_tensor(TensorLabel::free).expr - build_stress_tensor(super).expr -
         build_stress_tensor(boson).expr;
}

bool verify_decomposition(Family family) { return decomposition_difference(family).is_zero(); }

RatN central_charge(const SymbolicExpr& t) {
  SymbolicExpr quartic_pole = ope(t, t, kFullDepth, ctx()).at(4, 0);
  if (!quartic_pole.scalar_only())
    throw std::logic_error("central_charge: operator content in the fourth-order pole");
  return RatN(2) * quartic_pole.coefficient(Monomial{});
}

bool virasoro_check(const SymbolicExpr& t) {
  LaurentOPE<RatN> l = ope(t, t, kFullDepth, ctx());
  if (!l.at(3, 0).is_zero()) return false;
  if (l.at(2, 0) != RatN(2) * t) return false;
  return l.at(1, 0) == t.derivative(Chirality::holomorphic, ctx());
}

RatN conformal_weight(const SymbolicExpr& t, const SymbolicExpr& field) {
  if (field.size() != 1)
    throw std::invalid_argument("conformal_weight expects a single-monomial field");
  const auto& [mono, base] = *field.terms().begin();
  SymbolicExpr double_pole = ope(t, field, kFullDepth, ctx()).at(2, 0);
  RatN weight = double_pole.coefficient(mono) / base;
  if (double_pole != weight * field)
    throw std::runtime_error("double-pole content not proportional to the field (non-primary)");
  return weight;
}

RatN kappa_kinetic(const SymbolicExpr& t) {
  struct Probe {
    SymbolicExpr expr;
    int sign;  // sign of the monomial inside the kinetic arrangement
  };
  std::vector<Probe> probes = {
      {word({make_psi(Charge::minus, ix("i")), make_psi(Charge::plus, ix("i"), 1)}), 1},
      {word({make_psi(Charge::plus, ix("i")), make_psi(Charge::minus, ix("i"), 1)}), 1},
      {word({make_beta(Charge::minus, ix("i")), make_beta(Charge::plus, ix("i"), 1)}), 1},
      {word({make_beta(Charge::plus, ix("i")), make_beta(Charge::minus, ix("i"), 1)}), -1},
  };
  bool first = true;
  RatN kappa;
  for (const auto& probe : probes) {
    const auto& [mono, base] = *probe.expr.terms().begin();
    RatN c = t.coefficient(mono) / base;  // coefficient of the oriented monomial
    RatN k = probe.sign > 0 ? RatN(0) - c : c;
    if (first) {
      kappa = k;
      first = false;
    } else if (k != kappa) {
      throw std::runtime_error("inconsistent kinetic block in stress tensor");
    }
  }
  return kappa;
}

SymbolicExpr density_operator() {
  auto anti = Chirality::antiholomorphic;
  return word({make_psi(Charge::minus, ix("i"), 0, anti), make_psi(Charge::plus, ix("i"))}) +
         word({make_psi(Charge::minus, ix("i")), make_psi(Charge::plus, ix("i"), 0, anti)}) +
         word({make_beta(Charge::minus, ix("i"), 0, anti), make_beta(Charge::plus, ix("i"))}) +
         word({make_beta(Charge::minus, ix("i")), make_beta(Charge::plus, ix("i"), 0, anti)});
}

SymbolicExpr substitute_rank(const SymbolicExpr& e, const Rational& scale) {
  SymbolicExpr out;
  for (const auto& [m, c] : e.terms()) out.accumulate_canonical(m, c.substitute_scaled(scale));
  return out;
}

SymbolicExpr super_sector_tensor(Family family) {
  switch (family) {
    case Family::su:
      return build_stress_tensor(TensorLabel::gl11).expr;
    case Family::so:
      return build_stress_tensor(TensorLabel::osp22).expr;
    case Family::sp:
      // Eq. for osp(2|2) at level -2N: substitute N -> -2N.
      return substitute_rank(build_stress_tensor(TensorLabel::osp22).expr, Rational(-2));
  }
  throw std::invalid_argument("unknown family");
}

DosResult dos_exponents(Family family) {
  RatN kappa = kappa_kinetic(super_sector_tensor(family));
  RatN gamma = RatN(2) * kappa;
  RatN nu = gamma / (RatN(2) - gamma);
  return {family, kappa, gamma, nu};
}

bool dos_two_route_check(Family family) {
  SymbolicExpr t = super_sector_tensor(family);
  SymbolicExpr rho = density_operator();
  RatN kappa = kappa_kinetic(t);
  if (ope(t, rho, kFullDepth, ctx()).at(2, 0) != kappa * rho) return false;
  SymbolicExpr tbar = t.mirrored(ctx());
  return ope(tbar, rho, kFullDepth, ctx()).at(0, 2) == kappa * rho;
}

bool dos_quartic_check(Family family) {
  SymbolicExpr t = super_sector_tensor(family);
  SymbolicExpr quartic = t.filter([](const Monomial& m) { return m.factors.size() == 4; });
  SymbolicExpr rho = density_operator();
  if (!ope(quartic, rho, kFullDepth, ctx()).at(2, 0).is_zero()) return false;
  return ope(quartic.mirrored(ctx()), rho, kFullDepth, ctx()).at(0, 2).is_zero();
}

std::vector<std::pair<std::string, SymbolicExpr>> perturbation_operators(Family family) {
  auto lr = [&](const SymbolicExpr& a, const SymbolicExpr& b) {
    return SymbolicExpr::formal_product(a, b.mirrored(ctx()), ctx());
  };
  std::vector<std::pair<std::string, SymbolicExpr>> ops;
  if (family == Family::su) {
    CurrentMultiplet k = gl11_multiplet();
    const SymbolicExpr &h = *k.find("H"), &j = *k.find("J");
    const SymbolicExpr &sp = *k.find("S+"), &sm = *k.find("S-");
    ops.emplace_back("g", casimir_left_right(AlgebraSpec::su_family()));
    ops.emplace_back("gp1", lr(j, j) - lr(h, h) + lr(sp, sm) - lr(sm, sp));
    SymbolicExpr e = h - j;
    ops.emplace_back("gp2", RatN(-1) * lr(e, e));
  } else if (family == Family::so) {
    CurrentMultiplet k = osp22_multiplet();
    const SymbolicExpr &h = *k.find("H"), &j = *k.find("J");
    const SymbolicExpr &sp = *k.find("S+"), &sm = *k.find("S-");
    const SymbolicExpr &jp = *k.find("J+"), &jm = *k.find("J-");
    const SymbolicExpr &shp = *k.find("Shat+"), &shm = *k.find("Shat-");
    ops.emplace_back("g", casimir_left_right(AlgebraSpec::so_family()));
    SymbolicExpr kk = lr(j, j) - lr(h, h) -
                      (RatN(1) / RatN(2)) * (lr(jp, jm) + lr(jm, jp)) +
                      (lr(sp, sm) - lr(sm, sp)) + (lr(shm, shp) - lr(shp, shm));
    ops.emplace_back("gp", RatN(-1) * kk);
  } else {
    throw std::invalid_argument("beta system: sp family is out of symbolic scope");
  }
  return ops;
}

namespace {

/// Exact resolution of `target` in the span of `basis`; throws with a
/// rendered residue when the system is inconsistent.
std::vector<RatN> resolve_in_basis(const SymbolicExpr& target,
                                   const std::vector<SymbolicExpr>& basis) {
  std::vector<Monomial> monomials;
  auto note = [&](const Monomial& m) {
    for (const auto& known : monomials)
      if (known == m) return;
    monomials.push_back(m);
  };
  for (const auto& b : basis)
    for (const auto& [m, c] : b.terms()) note(m);
  for (const auto& [m, c] : target.terms()) note(m);

  const std::size_t rows = monomials.size(), cols = basis.size();
  std::vector<std::vector<RatN>> a(rows, std::vector<RatN>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = basis[c].coefficient(monomials[r]);
    a[r][cols] = target.coefficient(monomials[r]);
  }

  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_of_col(cols, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && a[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[pivot_row]);
    RatN inv = RatN(1) / a[pivot_row][c];
    for (auto& v : a[pivot_row]) v = v * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][c].is_zero()) continue;
      RatN f = a[r][c];
      for (std::size_t k = 0; k <= cols; ++k) a[r][k] = a[r][k] - f * a[pivot_row][k];
    }
    pivot_of_col[c] = pivot_row++;
  }

  std::vector<RatN> solution(cols, RatN(0));
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] != static_cast<std::size_t>(-1)) solution[c] = a[pivot_of_col[c]][cols];

  // consistency over every row
  for (std::size_t r = 0; r < rows; ++r) {
    RatN acc;
    for (std::size_t c = 0; c < cols; ++c)
      acc += basis[c].coefficient(monomials[r]) * solution[c];
    if (acc != target.coefficient(monomials[r]))
      throw std::runtime_error(
          "one-loop pole entry leaves the span of the perturbation basis");
  }
  return solution;
}

std::string render_beta_line(const std::string& name, const std::vector<std::string>& couplings,
                             const std::vector<std::vector<RatN>>& ck) {
  std::ostringstream os;
  os << "beta_" << name << " = ";
  bool any = false;
  const std::size_t n = couplings.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      RatN coeff = RatN(0) - ck[i][j];
      if (i != j) coeff = coeff - ck[j][i];
      if (coeff.is_zero()) continue;
      std::string cs = coeff.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      os << (any ? (neg ? " - " : " + ") : (neg ? "-" : ""));
      any = true;
      if (cs.find_first_of("+- ") != std::string::npos) cs = "(" + cs + ")";
      os << (cs == "1" ? "" : cs + "*");
      if (i == j)
        os << couplings[i] << "^2";
      else
        os << couplings[i] << "*" << couplings[j];
    }
  }
  if (!any) os << "0";
  return os.str();
}

}  // namespace

BetaSystem beta_one_loop(Family family) {
  auto named_ops = perturbation_operators(family);
  BetaSystem system;
  system.family = family;
  std::vector<SymbolicExpr> basis;
  for (auto& [name, op] : named_ops) {
    system.couplings.push_back(name);
    basis.push_back(op);
  }
  const std::size_t n = basis.size();
  system.c.assign(n, std::vector<std::vector<RatN>>(n, std::vector<RatN>(n, RatN(0))));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // the currents carry no derivatives, so the (1,1) entry is complete
      // without Taylor terms
      SymbolicExpr entry = ope(basis[i], basis[j], 0, ctx()).at(1, 1);
      std::vector<RatN> coeffs = resolve_in_basis(entry, basis);
      for (std::size_t k = 0; k < n; ++k) system.c[k][i][j] = coeffs[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    system.rendered.push_back(render_beta_line(system.couplings[k], system.couplings,
                                               system.c[k]));
  return system;
}

}  // namespace opekit
