#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crf {

// Exit codes: 0 verdict computed, 2 parse error, 3 precondition violation,
// 4 internal consistency failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Default truncation for generated quadric germs; CRF_TRUNC_DEFAULT or 8.
int default_trunc();

}  // namespace crf
