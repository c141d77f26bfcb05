#ifndef OPEKIT_PARSER_HPP
#define OPEKIT_PARSER_HPP

#include <string>

#include "opekit/expr.hpp"

namespace opekit {

/// Parse the expression DSL into a canonical operator expression.
///
/// Grammar (whitespace-insensitive):
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | power
///   power   := primary ('^' integer)?
///   primary := integer | 'N' | '(' expr ')'
///            | 'psi' '(' ('+'|'-') ',' index ')'   (holomorphic fermion)
///            | 'beta' '(' ... ')'                  (holomorphic ghost)
///            | 'psib' | 'betab'                    (antiholomorphic mirrors)
///            | 'd' '(' expr ')'                    (derivative, repeatable)
///            | 'no' '(' expr (',' expr)* ')'       (normal product)
///            | 'delta' '(' index ',' index ')'
///            | 'bar' '(' expr ')'                  (chirality mirror)
///            | named operator: H J S+ S- J+ J- Shat+ Shat-
///              T_free T_su0 T_so0 T_gl11 T_osp22 rho
///   index   := identifier (abstract) | positive integer (concrete)
///
/// '*' between two operator expressions is the formal juxtaposition;
/// '/', '^' require scalar operands.  Throws parse_error with a source
/// offset on syntax and semantic (index multiplicity) violations.
SymbolicExpr parse_expr(const std::string& src);

/// Parse a scalar rational function of N (subset of the DSL).
RatN parse_ratn(const std::string& src);

}  // namespace opekit

#endif
