#include "opekit/verify.hpp"

#include <future>
#include <sstream>

#include <json.hpp>

#include "opekit/oracle.hpp"
#include "opekit/render.hpp"

namespace opekit {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

VerificationReport from_difference(std::string claim, const SymbolicExpr& difference) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.passed = difference.is_zero();
  r.lhs_minus_rhs_term_count = static_cast<long>(difference.size());
  if (!r.passed) {
    std::size_t k = 0;
    for (const auto& [m, c] : difference.terms()) {
      if (k++ >= kMaxWitnesses) break;
      r.witness_terms.push_back(c.str() + " * " + render_monomial(m));
    }
  }
  return r;
}

VerificationReport from_bool(std::string claim, bool ok, std::string witness = "") {
  VerificationReport r;
  r.claim = std::move(claim);
  r.passed = ok;
  r.lhs_minus_rhs_term_count = ok ? 0 : 1;
  if (!ok && !witness.empty()) r.witness_terms.push_back(std::move(witness));
  return r;
}

}  // namespace

std::vector<VerificationReport> verify_family(Family family) {
  if (family == Family::sp)
    throw std::invalid_argument("use verify sp-numeric for the symplectic family");
  const bool su = family == Family::su;
  const std::string super_name = su ? "gl(1|1)_N" : "osp(2|2)_N";
  const std::string boson_name = su ? "su(N)_0" : "so(N)_0";
  const AlgebraSpec spec = su ? AlgebraSpec::su_family() : AlgebraSpec::so_family();
  const CurrentMultiplet multiplet = su ? gl11_multiplet() : osp22_multiplet();
  const SymbolicExpr t_free = build_stress_tensor(TensorLabel::free).expr;
  const SymbolicExpr t_super =
      build_stress_tensor(su ? TensorLabel::gl11 : TensorLabel::osp22).expr;
  const SymbolicExpr t_boson =
      build_stress_tensor(su ? TensorLabel::su0 : TensorLabel::so0).expr;

  std::vector<VerificationReport> out;

  out.push_back(from_difference("T_free = T_" + super_name + " + T_" + boson_name,
                                t_free - t_super - t_boson));

  out.push_back(from_bool("multiplet currents commute with the " + boson_name + " currents",
                          check_mutual_commute(spec, multiplet)));

  WeightOneReport w_free = weight_one_primary_check(t_free, multiplet);
  out.push_back(from_bool("multiplet currents are weight-1 primaries of T_free", w_free.ok));
  WeightOneReport w_super = weight_one_primary_check(t_super, multiplet);
  out.push_back(
      from_bool("multiplet currents are weight-1 primaries of T_" + super_name, w_super.ok));
  out.push_back(from_bool("multiplet currents are invisible to T_" + boson_name,
                          all_poles_vanish(t_boson, multiplet)));

  RatN c_free = central_charge(t_free);
  RatN c_super = central_charge(t_super);
  RatN c_boson = central_charge(t_boson);
  out.push_back(from_bool("central charges: c_free = 0 and c additive",
                          c_free.is_zero() && (c_super + c_boson) == c_free,
                          "c_free = " + c_free.str() + ", c_super = " + c_super.str() +
                              ", c_boson = " + c_boson.str()));

  // weight additivity for the fundamental fields
  bool weights_ok = true;
  std::string weight_witness;
  for (auto [species, label] : {std::pair{Species::psi, "psi"}, {Species::beta, "beta"}}) {
    for (Charge q : {Charge::plus, Charge::minus}) {
      Monomial m;
      m.factors.push_back(FieldSymbol{Chirality::holomorphic, species, q, 0,
                                      FlavorIndex::abstract("m")});
      SymbolicExpr field =
          SymbolicExpr::from_monomial(std::move(m), RatN(1), symbolic_context());
      RatN d_free = conformal_weight(t_free, field);
      RatN d_super = conformal_weight(t_super, field);
      RatN d_boson = conformal_weight(t_boson, field);
      if (d_free != RatN(Rational(1, 2)) || d_free != d_super + d_boson) {
        weights_ok = false;
        weight_witness = std::string(label) + ": " + d_free.str() + " vs " + d_super.str() +
                         " + " + d_boson.str();
      }
    }
  }
  out.push_back(from_bool("Delta_free = 1/2 = Delta_super + Delta_boson for psi, beta",
                          weights_ok, weight_witness));

  out.push_back(from_bool("kinetic kappa and the T.rho double pole agree (Gamma = 2 kappa)",
                          dos_two_route_check(family)));
  out.push_back(from_bool("quartic terms contribute nothing to the T.rho double pole",
                          dos_quartic_check(family)));

  return out;
}

std::vector<VerificationReport> verify_all() {
  auto su = std::async(std::launch::async, [] { return verify_family(Family::su); });
  auto so = std::async(std::launch::async, [] { return verify_family(Family::so); });
  std::vector<VerificationReport> out = su.get();
  std::vector<VerificationReport> so_reports = so.get();
  out.insert(out.end(), so_reports.begin(), so_reports.end());
  return out;
}

VerificationReport verify_sp_numeric(int n) {
  bool ok = numeric_verify_sp(n);
  return from_bool("T_free = T_osp(2|2)_{-2N} + T_sp(2N)_0 with explicit sp(" +
                       std::to_string(2 * n) + ") generators",
                   ok);
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

std::string reports_to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.passed ? "[ok]   " : "[FAIL] ") << r.claim;
    if (!r.passed) {
      os << "  (" << r.lhs_minus_rhs_term_count << " residual terms)";
      for (const auto& w : r.witness_terms) os << "\n         " << w;
    }
    os << "\n";
  }
  return os.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json item;
    item["claim"] = r.claim;
    item["status"] = r.passed ? "verified" : "failed";
    item["lhs_minus_rhs_term_count"] = r.lhs_minus_rhs_term_count;
    item["witness_terms"] = r.witness_terms;
    arr.push_back(std::move(item));
  }
  return arr.dump(2);
}

}  // namespace opekit
