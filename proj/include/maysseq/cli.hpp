#pragma once

#include <ostream>

namespace maysseq {

// Exit codes: 0 success, 1 usage or parameter error, 2 collapse unresolved or
// verification mismatch, 3 table too short for the collapse prover.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maysseq
