#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treepack {

/// Runs one CLI command. Exit codes: 0 success, 1 verification failure or a
/// requested object does not exist, 2 usage or configuration error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace treepack
