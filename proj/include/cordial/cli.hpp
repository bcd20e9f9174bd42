#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cordial {

// Exit codes: 0 success/cordial, 1 usage, 2 proven not cordial, 3 unknown
// (budget), 4 verification failed.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cordial
