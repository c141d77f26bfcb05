#ifndef OPEKIT_RENDER_HPP
#define OPEKIT_RENDER_HPP

#include <string>

#include "opekit/expr.hpp"
#include "opekit/wick.hpp"

namespace opekit {

/// Canonical DSL rendering; parse(render(e)) == e and the output is
/// byte-stable across runs.
std::string render_expr(const SymbolicExpr& e);
std::string render_monomial(const Monomial& m);

/// LaTeX rendering in the (psi^i_+, beta^i_-, normal-order colon) notation.
std::string render_expr_latex(const SymbolicExpr& e);

/// JSON for a Laurent expansion:
///   {"depth": d, "entries": [{"pole_z": p, "pole_zbar": q,
///     "terms": [{"coeff": "...", "monomial": "..."}]}]}
std::string ope_to_json(const LaurentOPE<RatN>& l);

}  // namespace opekit

#endif
