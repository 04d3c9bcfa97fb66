//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_CLI_H_
#define OCSRKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace ocsrkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name. Subcommands read `in` unless --in is
// given and write `out` unless --out is given.
int run_cli(const std::vector<std::string> &args, std::istream &in,
            std::ostream &out, std::ostream &err);

}  // namespace ocsrkit

#endif  // OCSRKIT_CLI_H_
