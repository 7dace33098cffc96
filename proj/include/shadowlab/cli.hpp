#pragma once

// Command-line front end. Exit codes: 0 verified, 1 falsified (a witness is
// reported), 2 usage or input error, 3 horizon or enumeration cap reached.

#include <iosfwd>
#include <string>
#include <vector>

#include "shadowlab/error.hpp"
#include "shadowlab/report.hpp"

namespace shadowlab::cli {

enum ExitCode : int { kVerified = 0, kFalsified = 1, kUsage = 2, kHorizon = 3 };

int exit_code_for(Errc code) noexcept;

struct RunOutcome {
  int exit_code = kVerified;
  RunReport report;
};

/// args excludes the program name.
RunOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace shadowlab::cli
