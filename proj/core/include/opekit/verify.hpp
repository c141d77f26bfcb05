#ifndef OPEKIT_VERIFY_HPP
#define OPEKIT_VERIFY_HPP

#include <string>
#include <vector>

#include "opekit/sugawara.hpp"

namespace opekit {

struct VerificationReport {
  std::string claim;
  bool passed = false;
  long lhs_minus_rhs_term_count = 0;       // surviving terms of the difference
  std::vector<std::string> witness_terms;  // rendered, only on failure
};

/// The family suite: decomposition identity, commuting sectors, weight-one
/// primaries, central charges, weight additivity, and the two-route
/// density-of-states scaling dimension.
std::vector<VerificationReport> verify_family(Family family);

/// Both families; independent computations aggregated deterministically.
std::vector<VerificationReport> verify_all();

VerificationReport verify_sp_numeric(int n);

bool all_passed(const std::vector<VerificationReport>& reports);

std::string reports_to_text(const std::vector<VerificationReport>& reports);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

}  // namespace opekit

#endif
