#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnet::cli {

/// Runs one command. Returns 0 on success, 1 on a domain error (reported as
/// {"error":...} on `err`) and 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qnet::cli
