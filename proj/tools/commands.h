// Copyright 2026 The ldpmean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the ldpmean tool. Each writes CSV (or a plain report) to
// `out` and is deterministic given its arguments.

#ifndef LDPMEAN_TOOLS_COMMANDS_H_
#define LDPMEAN_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "ldpmean/tuner.h"

namespace ldpmean::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// 12 significant digits, '.' decimal point regardless of locale.
std::string FormatNumber(double x);

// InvalidArgument maps to kExitUsage, every other error to kExitNumeric.
int ExitCodeFor(const absl::Status& status);

// eps0,eps1,p,q,gamma,m,err,c_const
absl::Status CmdTune(double eps, int d, Algorithm alg, std::ostream& out);

// d,err_pu,err_pug,ratio. PrivUnitG is tuned per d and both analytic errors
// are evaluated at the shared (p, q).
absl::Status CmdRatio(double eps, const std::vector<int>& dims,
                      std::ostream& out);

// eps,c_eps_d
absl::Status CmdCCurve(const std::vector<double>& eps_list, int d,
                       std::ostream& out);

// n,d,eps,alg,trials,seed,empirical_mse,standard_error,
// analytic_err_per_user,analytic_err_n
absl::Status CmdSimulate(double eps, int d, int n, int trials, uint64_t seed,
                         Algorithm alg, int workers, std::ostream& out);

// Reads one whitespace-separated unit vector per non-empty line of `in` and
// writes its privatized copy on the corresponding output line. Line i is
// randomized with RngStream(seed, 0).Derive(i).
absl::Status CmdRandomize(double eps, int d, Algorithm alg, uint64_t seed,
                          std::istream& in, std::ostream& out);

// status,eps,k,alpha,err_implied,high_arcs  (status is pass or fail)
absl::Status CmdLpVerify(double eps, int arcs, std::ostream& out);

// Parses argv and dispatches. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace ldpmean::cli

#endif  // LDPMEAN_TOOLS_COMMANDS_H_
