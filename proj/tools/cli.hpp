#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptv::cli {

/// Runs one `ptv` command. Returns 0 for an affirmative or clean result, 1 for a
/// negative verdict or an analysis error, 2 for usage and parse errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ptv::cli
