#pragma once

#include <iosfwd>

namespace causal::cli {

/// Runs one `causal` command. Exit codes: 0 holds/sat/valid/accepted,
/// 1 fails/unsat/invalid/rejected, 2 usage or parse error, 3 budget exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace causal::cli
