#pragma once

// Command-line front end. Exit codes: 0 affirmative, 1 negative (rejected,
// different, axiom failure), 2 usage or input errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace stepauto::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stepauto::cli
