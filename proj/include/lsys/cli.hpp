#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lsys {

/// What one CLI invocation reports. Everything except the wall time is a
/// function of the inputs, seeds and options.
struct RunReport {
    struct Input {
        std::string role;
        std::string path;
        std::string digest;
    };

    std::string command;
    std::vector<Input> inputs;
    /// Ordered "key = value" lines.
    std::vector<std::pair<std::string, std::string>> outcome;
    /// Free-form trailing block (derivation listing, system text, ...).
    std::string body;
    double wall_ms = 0.0;

    /// Deterministic rendering; every line gets `prefix` prepended.
    std::string render(const std::string& prefix = "") const;
};

/// Runs the command line (without the program name). Reports go to `out`,
/// diagnostics and timing to `err`. Returns the process exit code:
/// 0 success, 1 usage or I/O error, 2 incompatible sequence, 3 cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsys
