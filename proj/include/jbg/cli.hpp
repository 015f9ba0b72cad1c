#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jbg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kStatisticalFailure = 1,  // simulate: |z| > 4
  kUsageError = 2,
  kIoError = 3,
};

/// Entry point for the `jbg` tool. `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`.
///
///   optimize  --overlap S --receivers N [--prior ETA1] [--strategy NAME] [--emit-stages]
///   sweep     --variable overlap|prior|both --receivers N --out FILE [ranges] [--strategies A,B]
///   simulate  --overlap S --receivers N --seed U64 [--prior ETA1] [--trials T] [--strategy NAME]
///   find-sb   --receivers N
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jbg::cli
