#ifndef OPEKIT_CLI_HPP
#define OPEKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace opekit {

/// Command driver behind the opekit binary.  Exit codes: 0 all claims
/// verified / output produced, 1 an identity failed, 2 usage or parse
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opekit

#endif
