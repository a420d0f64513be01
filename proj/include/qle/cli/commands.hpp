// Subcommand implementations and the tool entry point

#pragma once

#include <iosfwd>
#include <stdexcept>

#include "qle/cli/config.hpp"
#include "qle/cli/table.hpp"

namespace qle::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 1;
inline constexpr int numeric = 2;
inline constexpr int io = 3;
} // namespace exit_code

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Runs a resolved, validated configuration.
Table run_command(const RunConfig& cfg);

// Parse, run and write. Data goes to `out` unless --out names a file;
// diagnostics go to `err`. Returns one of the exit codes above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qle::cli
