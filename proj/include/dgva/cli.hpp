#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dgva {

/* Full command-line surface.  `args` excludes the program name.  Returns the
 * process exit status: 0 all checks pass, 1 a mathematical check failed,
 * 2 usage or parse error, 3 the declared window cannot support the request. */
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace dgva
