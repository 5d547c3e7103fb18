#pragma once

#include <ostream>

namespace fatou {

/// Runs one subcommand (render, portrait, periodic, ray, lift, catalog,
/// verify).  Reports go to `out` as JSON, diagnostics to `err`.
/// Returns 0 on success, 1 on a computational failure or failed
/// verification, 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fatou
