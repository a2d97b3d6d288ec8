#ifndef SEPSPACE_CLI_HPP
#define SEPSPACE_CLI_HPP

#include <string>
#include <utility>
#include <vector>

namespace sepspace {

/// Outcome of one CLI invocation: stable metric keys plus a single
/// pass/fail verdict. Exit codes: 0 pass, 1 verification failure,
/// 2 input error.
struct RunReport {
  std::string command;
  bool pass = true;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> artifacts_written;
};

/// Entry point shared by the binary and the tests.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without program name

}  // namespace sepspace

#endif
