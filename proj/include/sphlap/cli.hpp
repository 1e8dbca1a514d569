#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphlap::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

/// Runs one command line (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
///
///   coeffs      --l N [--format json|plain]
///   closed-form --l N [--format json|plain|latex]
///   eval        --l N --p X [--bits B] [--format json|plain]
///   validate    --l-max N --p-grid x1,x2,...
///   debye       --m M --len L --v V --omega-l W --p X
///   bench       --l-list l1,l2,... --p-list p1,... --reps R [--format json|csv] [--csv FILE]
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sphlap::cli
