#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcoh {

/// Command driver shared by the binary and the tests.  Exit codes:
/// 0 success, 1 mathematical verdict false or precondition unmet,
/// 2 usage error, 3 resource limit, 4 corrupt input.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qcoh
