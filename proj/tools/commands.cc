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

#include "commands.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "ldpmean/capstruct_lp.h"
#include "ldpmean/estimator.h"
#include "ldpmean/sphere.h"
#include "ldpmean/status_macros.h"

namespace ldpmean::cli {
namespace {

// Accepted deviation of an input vector's norm from 1.
constexpr double kInputNormTolerance = 1e-6;

void WriteRow(std::ostream& out, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

absl::StatusOr<std::vector<double>> ParseVector(const std::string& line) {
  std::vector<double> values;
  std::istringstream tokens(line);
  std::string token;
  while (tokens >> token) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("cannot parse '", token, "' as a real number"));
    }
    values.push_back(value);
  }
  return values;
}

}  // namespace

std::string FormatNumber(double x) {
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  return status.code() == absl::StatusCode::kInvalidArgument ? kExitUsage
                                                             : kExitNumeric;
}

absl::Status CmdTune(double eps, int d, Algorithm alg, std::ostream& out) {
  LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned, Tune(eps, d, alg));
  WriteRow(out, {"eps0", "eps1", "p", "q", "gamma", "m", "err", "c_const"});
  WriteRow(out, {FormatNumber(tuned.split.eps0), FormatNumber(tuned.split.eps1),
                 FormatNumber(tuned.p()), FormatNumber(tuned.q()),
                 FormatNumber(tuned.gamma()), FormatNumber(tuned.m()),
                 FormatNumber(tuned.err_star), FormatNumber(tuned.c_const)});
  return absl::OkStatus();
}

absl::Status CmdRatio(double eps, const std::vector<int>& dims,
                      std::ostream& out) {
  std::ostringstream body;
  for (int d : dims) {
    LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned,
                             Tune(eps, d, Algorithm::kPrivUnitG));
    LDPMEAN_ASSIGN_OR_RETURN(
        const ErrorBreakdown pu,
        ErrorAtProbabilities(d, Algorithm::kPrivUnit, tuned.split.p(),
                             tuned.split.q()));
    WriteRow(body, {std::to_string(d), FormatNumber(pu.err),
                    FormatNumber(tuned.err_star),
                    FormatNumber(tuned.err_star / pu.err)});
  }
  WriteRow(out, {"d", "err_pu", "err_pug", "ratio"});
  out << body.str();
  return absl::OkStatus();
}

absl::Status CmdCCurve(const std::vector<double>& eps_list, int d,
                       std::ostream& out) {
  std::ostringstream body;
  for (double eps : eps_list) {
    LDPMEAN_ASSIGN_OR_RETURN(const double c, CEps(eps, d));
    WriteRow(body, {FormatNumber(eps), FormatNumber(c)});
  }
  WriteRow(out, {"eps", "c_eps_d"});
  out << body.str();
  return absl::OkStatus();
}

absl::Status CmdSimulate(double eps, int d, int n, int trials, uint64_t seed,
                         Algorithm alg, int workers, std::ostream& out) {
  TrialConfig config{.n = n,
                     .d = d,
                     .eps = eps,
                     .alg = alg,
                     .trials = trials,
                     .seed = seed,
                     .workers = workers};
  LDPMEAN_ASSIGN_OR_RETURN(const TrialReport report, RunTrials(config));
  WriteRow(out, {"n", "d", "eps", "alg", "trials", "seed", "empirical_mse",
                 "standard_error", "analytic_err_per_user", "analytic_err_n"});
  WriteRow(out, {std::to_string(n), std::to_string(d), FormatNumber(eps),
                 std::string(AlgorithmName(alg)), std::to_string(trials),
                 std::to_string(seed), FormatNumber(report.empirical_mse),
                 FormatNumber(report.standard_error),
                 FormatNumber(report.analytic_err_per_user),
                 FormatNumber(report.analytic_err_per_user / n)});
  return absl::OkStatus();
}

absl::Status CmdRandomize(double eps, int d, Algorithm alg, uint64_t seed,
                          std::istream& in, std::ostream& out) {
  LDPMEAN_ASSIGN_OR_RETURN(const TunedResult tuned, Tune(eps, d, alg));
  LDPMEAN_ASSIGN_OR_RETURN(const auto randomizer, MakeRandomizer(tuned));
  const RngStream root(seed, 0);
  std::string line;
  uint64_t index = 0;
  int line_number = 0;
  std::ostringstream body;
  while (std::getline(in, line)) {
    ++line_number;
    LDPMEAN_ASSIGN_OR_RETURN(std::vector<double> values, ParseVector(line));
    if (values.empty()) continue;
    if (static_cast<int>(values.size()) != d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected ", d, " values, got ",
          values.size()));
    }
    auto v = UnitVector::Create(std::move(values), kInputNormTolerance);
    if (!v.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": ", v.status().message()));
    }
    RngStream rng = root.Derive(index++);
    LDPMEAN_ASSIGN_OR_RETURN(const std::vector<double> z,
                             randomizer->Randomize(*v, rng));
    for (size_t i = 0; i < z.size(); ++i) {
      if (i > 0) body << ' ';
      body << FormatNumber(z[i]);
    }
    body << '\n';
  }
  out << body.str();
  return absl::OkStatus();
}

absl::Status CmdLpVerify(double eps, int arcs, std::ostream& out) {
  LDPMEAN_ASSIGN_OR_RETURN(const LpInstance instance,
                           LpInstance::Create(arcs, eps));
  const LpSolution solution = SolveGreedy(instance);
  const bool pass = VerifyCapStructure(instance, solution);
  WriteRow(out, {"status", "eps", "k", "alpha", "err_implied", "high_arcs"});
  WriteRow(out, {pass ? "pass" : "fail", FormatNumber(eps),
                 std::to_string(arcs), FormatNumber(solution.alpha),
                 FormatNumber(solution.err_implied),
                 std::to_string(solution.threshold_count)});
  return absl::OkStatus();
}

int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally private mean estimation on the unit sphere"};
  app.require_subcommand(1);

  double eps = 0.0;
  int d = 0;
  std::string alg_name = "privunitg";
  std::vector<double> eps_list;
  std::vector<int> dims;
  int n = 1;
  int trials = 1000;
  int workers = 1;
  int arcs = 360;
  uint64_t seed = 0;
  std::string input_path;
  std::string output_path;

  const auto positive = CLI::PositiveNumber;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--out", output_path, "Write output to this file");
  };
  auto add_alg = [&](CLI::App* sub) {
    sub->add_option("--alg", alg_name, "privunit or privunitg")
        ->check(CLI::IsMember({"privunit", "privunitg"}));
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed")->envname("LDPMEAN_SEED");
  };

  CLI::App* tune = app.add_subcommand("tune", "Optimal parameters and error");
  tune->add_option("--eps", eps, "Privacy budget")->required()->check(positive);
  tune->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2, 1 << 30));
  add_alg(tune);
  add_output(tune);

  CLI::App* ratio =
      app.add_subcommand("ratio", "PrivUnitG / PrivUnit error ratio per d");
  ratio->add_option("--eps", eps, "Privacy budget")->required()->check(positive);
  ratio->add_option("--d", dims, "Dimensions (comma separated)")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 30));
  add_output(ratio);

  CLI::App* c_curve = app.add_subcommand("c_curve", "C_{eps,d} over eps");
  c_curve->alias("c-curve");
  c_curve->add_option("--eps", eps_list, "Budgets (comma separated)")
      ->required()
      ->delimiter(',')
      ->check(positive);
  c_curve->add_option("--d", d, "Dimension (default 50000)")
      ->check(CLI::Range(2, 1 << 30));
  add_output(c_curve);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo MSE vs analytic error");
  simulate->add_option("--eps", eps, "Privacy budget")->required()->check(positive);
  simulate->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2, 1 << 30));
  simulate->add_option("--n", n, "Users per trial")->check(positive);
  simulate->add_option("--trials", trials, "Number of trials")->check(positive);
  simulate->add_option("--workers", workers, "Worker threads")->check(positive);
  add_alg(simulate);
  add_seed(simulate);
  add_output(simulate);

  CLI::App* randomize =
      app.add_subcommand("randomize", "Privatize unit vectors (one per line)");
  randomize->add_option("--eps", eps, "Privacy budget")->required()->check(positive);
  randomize->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2, 1 << 30));
  randomize->add_option("-i,--input", input_path, "Input file (default stdin)");
  add_alg(randomize);
  add_seed(randomize);
  add_output(randomize);

  CLI::App* lp_verify =
      app.add_subcommand("lp_verify", "Solve and certify the d=2 cap LP");
  lp_verify->alias("lp-verify");
  lp_verify->add_option("--eps", eps, "Privacy budget")->required()->check(positive);
  lp_verify->add_option("--k", arcs, "Even number of arcs >= 8")
      ->check(CLI::Range(8, 1 << 24));
  add_output(lp_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      err << "cannot open output file " << output_path << '\n';
      return kExitUsage;
    }
  }
  std::ostream& sink = output_path.empty() ? out : file;
  const auto alg = ParseAlgorithm(alg_name);

  absl::Status status;
  if (tune->parsed()) {
    status = CmdTune(eps, d, *alg, sink);
  } else if (ratio->parsed()) {
    status = CmdRatio(eps, dims, sink);
  } else if (c_curve->parsed()) {
    status = CmdCCurve(eps_list, d == 0 ? 50000 : d, sink);
  } else if (simulate->parsed()) {
    status = CmdSimulate(eps, d, n, trials, seed, *alg, workers, sink);
  } else if (randomize->parsed()) {
    if (input_path.empty()) {
      status = CmdRandomize(eps, d, *alg, seed, in, sink);
    } else {
      std::ifstream input(input_path);
      if (!input) {
        err << "cannot open input file " << input_path << '\n';
        return kExitUsage;
      }
      status = CmdRandomize(eps, d, *alg, seed, input, sink);
    }
  } else if (lp_verify->parsed()) {
    if (arcs % 2 != 0) {
      err << "--k must be even\n";
      return kExitUsage;
    }
    status = CmdLpVerify(eps, arcs, sink);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << '\n';
  }
  return ExitCodeFor(status);
}

}  // namespace ldpmean::cli
