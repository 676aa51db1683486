#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weil::cli {

/// Process exit statuses.
enum Exit : int {
  kPass = 0,
  kFailure = 1,   ///< a property failed or a query answered "no"
  kUsage = 2,     ///< bad arguments, unparsable input, bad config
  kSemantic = 3,  ///< well-formed input the mathematics rejects
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weil::cli
