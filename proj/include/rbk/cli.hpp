#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbk/bott.hpp"
#include "rbk/pmatrix.hpp"

namespace rbk::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 2,
    exit_inconsistent = 3,
};

// Structured documents behind the check, sw, pmatrix, generators and verify
// commands. Every document carries "schema_version" and "report".
nlohmann::ordered_json check_report(const BottMatrix& a);
nlohmann::ordered_json sw_report(const PMatrix& e);
nlohmann::ordered_json pmatrix_report(const PMatrix& e);
nlohmann::ordered_json generators_report(const BottMatrix& a);
/// Throws NotKahler.
nlohmann::ordered_json verify_report(const BottMatrix& a);

/// Runs one invocation; args excludes the program name. Reports go to `out`,
/// diagnostics and progress to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rbk::cli
