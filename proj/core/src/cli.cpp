#include "opekit/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "opekit/oracle.hpp"
#include "opekit/parser.hpp"
#include "opekit/render.hpp"
#include "opekit/verify.hpp"

namespace opekit {

namespace {

int default_depth() {
  if (const char* env = std::getenv("OPEKIT_DEPTH")) {
    try {
      return std::stoi(env);
    } catch (...) {
      return 2;
    }
  }
  return 2;
}

Family family_from(const std::string& s) {
  if (s == "su") return Family::su;
  if (s == "so") return Family::so;
  if (s == "sp") return Family::sp;
  throw CLI::ValidationError("family must be su, so, or sp");
}

TensorLabel label_from(const std::string& s) {
  if (s == "free") return TensorLabel::free;
  if (s == "su0") return TensorLabel::su0;
  if (s == "so0") return TensorLabel::so0;
  if (s == "gl11") return TensorLabel::gl11;
  if (s == "osp22") return TensorLabel::osp22;
  throw CLI::ValidationError("unknown stress tensor label");
}

void print_laurent_text(const LaurentOPE<RatN>& l, std::ostream& out) {
  std::vector<std::pair<int, int>> keys;
  for (const auto& [key, expr] : l.entries())
    if (!expr.is_zero()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  if (keys.empty()) {
    out << "0\n";
    return;
  }
  for (auto [p, q] : keys) {
    out << "pole (" << p << "," << q << "): " << render_expr(l.at(p, q)) << "\n";
  }
}

void print_laurent_latex(const LaurentOPE<RatN>& l, std::ostream& out) {
  std::vector<std::pair<int, int>> keys;
  for (const auto& [key, expr] : l.entries())
    if (!expr.is_zero()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  for (auto [p, q] : keys) {
    out << "&";
    if (p > 0) out << "\\frac{1}{(z-w)^{" << p << "}}";
    if (q > 0) out << "\\frac{1}{(\\bar z-\\bar w)^{" << q << "}}";
    out << "\\Big[" << render_expr_latex(l.at(p, q)) << "\\Big]\\\\\n";
  }
}

struct DosRow {
  std::string family;
  DosResult result;
};

std::vector<DosRow> dos_rows() {
  return {{"sp(2N)", dos_exponents(Family::sp)},
          {"su(N)", dos_exponents(Family::su)},
          {"so(N)", dos_exponents(Family::so)}};
}

int cmd_verify(const std::string& target, int n, const std::string& format, std::ostream& out) {
  std::vector<VerificationReport> reports;
  if (target == "all")
    reports = verify_all();
  else if (target == "sp-numeric")
    reports.push_back(verify_sp_numeric(n));
  else
    reports = verify_family(family_from(target));
  out << (format == "json" ? reports_to_json(reports) + "\n" : reports_to_text(reports));
  return all_passed(reports) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact OPE engine for free Dirac fermions and ghosts"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string format = "text";
  app.add_option("--format", format, "text|json|latex")->capture_default_str();

  // ope <A> <B>
  auto* ope_cmd = app.add_subcommand("ope", "Laurent expansion of A(z,zbar) B(w,wbar)");
  std::string ope_a, ope_b;
  int depth = default_depth();
  ope_cmd->add_option("A", ope_a, "left operand (DSL)")->required();
  ope_cmd->add_option("B", ope_b, "right operand (DSL)")->required();
  ope_cmd->add_option("--depth", depth, "Taylor depth for the regular direction")
      ->capture_default_str();

  // verify <su|so|all|sp-numeric>
  auto* verify_cmd = app.add_subcommand("verify", "prove the decomposition identities");
  std::string verify_target;
  int sp_n = 1;
  verify_cmd->add_option("target", verify_target, "su|so|all|sp-numeric")->required();
  verify_cmd->add_option("--n", sp_n, "rank for sp-numeric (1 or 2)")->capture_default_str();

  // central-charge <label>
  auto* cc_cmd = app.add_subcommand("central-charge", "c from the T(z)T(w) quartic pole");
  std::string cc_label;
  cc_cmd->add_option("tensor", cc_label, "free|su0|so0|gl11|osp22")->required();

  // weights <family> --field psi|beta
  auto* w_cmd = app.add_subcommand("weights", "conformal weights and their additivity");
  std::string w_family, w_field = "psi";
  w_cmd->add_option("family", w_family, "su|so")->required();
  w_cmd->add_option("--field", w_field, "psi|beta")->capture_default_str();

  // beta <family>
  auto* beta_cmd = app.add_subcommand("beta", "one-loop beta functions");
  std::string beta_family;
  beta_cmd->add_option("family", beta_family, "su|so")->required();

  // dos-table
  auto* dos_cmd = app.add_subcommand("dos-table", "density-of-states exponents");
  std::string eval_list;
  dos_cmd->add_option("--eval", eval_list, "comma-separated ranks to evaluate at");

  // oracle completeness <family> --n k
  auto* oracle_cmd = app.add_subcommand("oracle", "explicit-matrix ground truth");
  auto* compl_cmd = oracle_cmd->add_subcommand("completeness", "brute-force completeness check");
  std::string oracle_family;
  int oracle_n = 2;
  compl_cmd->add_option("family", oracle_family, "su|so|sp")->required();
  compl_cmd->add_option("--n", oracle_n, "rank")->required();

  std::vector<const char*> argv;
  argv.push_back("opekit");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*ope_cmd) {
      SymbolicExpr a = parse_expr(ope_a);
      SymbolicExpr b = parse_expr(ope_b);
      LaurentOPE<RatN> l = ope(a, b, depth, symbolic_context());
      if (format == "json")
        out << ope_to_json(l) << "\n";
      else if (format == "latex")
        print_laurent_latex(l, out);
      else
        print_laurent_text(l, out);
      return 0;
    }
    if (*verify_cmd) {
      if (verify_target == "sp-numeric" && sp_n != 1 && sp_n != 2) {
        err << "sp-numeric supports --n 1 or 2\n";
        return 2;
      }
      return cmd_verify(verify_target, sp_n, format, out);
    }
    if (*cc_cmd) {
      RatN c = central_charge(build_stress_tensor(label_from(cc_label)).expr);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["tensor"] = cc_label;
        j["central_charge"] = c.str();
        out << j.dump(2) << "\n";
      } else {
        out << "c(" << cc_label << ") = " << c.str() << "\n";
      }
      return 0;
    }
    if (*w_cmd) {
      Family fam = family_from(w_family);
      if (fam == Family::sp) {
        err << "weights: symbolic families are su and so\n";
        return 2;
      }
      Species sp = w_field == "beta" ? Species::beta : Species::psi;
      Monomial m;
      m.factors.push_back(
          FieldSymbol{Chirality::holomorphic, sp, Charge::plus, 0, FlavorIndex::abstract("m")});
      SymbolicExpr field = SymbolicExpr::from_monomial(std::move(m), RatN(1), symbolic_context());
      SymbolicExpr t_free = build_stress_tensor(TensorLabel::free).expr;
      SymbolicExpr t_super =
          build_stress_tensor(fam == Family::su ? TensorLabel::gl11 : TensorLabel::osp22).expr;
      SymbolicExpr t_boson =
          build_stress_tensor(fam == Family::su ? TensorLabel::su0 : TensorLabel::so0).expr;
      RatN d_free = conformal_weight(t_free, field);
      RatN d_super = conformal_weight(t_super, field);
      RatN d_boson = conformal_weight(t_boson, field);
      bool additive = d_free == d_super + d_boson;
      if (format == "json") {
        nlohmann::ordered_json j;
        j["family"] = w_family;
        j["field"] = w_field;
        j["delta_free"] = d_free.str();
        j["delta_super"] = d_super.str();
        j["delta_boson"] = d_boson.str();
        j["additivity"] = additive ? "verified" : "failed";
        out << j.dump(2) << "\n";
      } else {
        out << "Delta_free = " << d_free.str() << "\n";
        out << "Delta_super = " << d_super.str() << "\n";
        out << "Delta_boson = " << d_boson.str() << "\n";
        out << "additivity: " << (additive ? "verified" : "FAILED") << "\n";
      }
      return additive ? 0 : 1;
    }
    if (*beta_cmd) {
      BetaSystem system = beta_one_loop(family_from(beta_family));
      if (format == "json") {
        nlohmann::ordered_json j;
        j["family"] = beta_family;
        j["couplings"] = system.couplings;
        j["beta"] = system.rendered;
        out << j.dump(2) << "\n";
      } else {
        for (const auto& line : system.rendered) out << line << "\n";
      }
      return 0;
    }
    if (*dos_cmd) {
      std::vector<Rational> evals;
      if (!eval_list.empty()) {
        std::stringstream ss(eval_list);
        std::string item;
        while (std::getline(ss, item, ',')) evals.emplace_back(item);
      }
      auto rows = dos_rows();
      if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
          nlohmann::ordered_json j;
          j["family"] = row.family;
          j["Gamma"] = row.result.gamma.str();
          j["nu"] = row.result.nu.str();
          for (const auto& n : evals) {
            nlohmann::ordered_json at;
            try {
              at["Gamma"] = row.result.gamma.eval(n).str();
              at["nu"] = row.result.nu.eval(n).str();
            } catch (const pole_error&) {
              at["Gamma"] = "pole";
              at["nu"] = "pole";
            }
            j["eval"][n.str()] = std::move(at);
          }
          arr.push_back(std::move(j));
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "family    Gamma           nu\n";
        for (const auto& row : rows) {
          out << row.family << "   " << row.result.gamma.str() << "   " << row.result.nu.str()
              << "\n";
          for (const auto& n : evals) {
            out << "  at N=" << n.str() << ": ";
            try {
              out << "Gamma = " << row.result.gamma.eval(n).str()
                  << ", nu = " << row.result.nu.eval(n).str() << "\n";
            } catch (const pole_error&) {
              out << "pole\n";
            }
          }
        }
      }
      return 0;
    }
    if (*compl_cmd) {
      Family fam = family_from(oracle_family);
      CompletenessResult r = completeness_numeric(fam, oracle_n);
      Rational c2g = adjoint_casimir_numeric(fam, oracle_n);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["family"] = oracle_family;
        j["n"] = oracle_n;
        j["completeness"] = r.matches_rule ? "verified" : "failed";
        j["C2_fund"] = r.casimir2_fund.str();
        j["level_times_dim"] = r.level_times_dim.str();
        j["C2_adjoint"] = c2g.str();
        out << j.dump(2) << "\n";
      } else {
        out << "completeness(" << oracle_family << ", n=" << oracle_n
            << "): " << (r.matches_rule ? "verified" : "FAILED") << "\n";
        out << "C2(N) = " << r.casimir2_fund.str()
            << ", C(N)*dim = " << r.level_times_dim.str() << ", C2(G) = " << c2g.str() << "\n";
      }
      return r.matches_rule ? 0 : 1;
    }
    err << "no subcommand\n";
    return 2;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const pole_error& e) {
    err << "pole error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace opekit
