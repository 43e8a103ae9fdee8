// cjl command-line front end.
//
//   cjl <spectrum|profile|jacobi|plateau|report> [--m M --n N] [--N N --R R]
//       [--s-max S] [--r-max R] [--eps E] [--tol T] [--out DIR] [--format csv|json]
//       [--sweep 2x2,2x3,...] [--axis m|n] [--config FILE]
//
// Exit codes: 0 ok, 2 usage or config error, 3 I/O error, 4 numerical target missed.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cjl::cli {

inline constexpr const char* version = "0.1.0";

enum ExitCode : int { ok = 0, internal_error = 1, usage_error = 2, io_error = 3, numerical_error = 4 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cjl::cli
