// Run configuration for the qle command-line tool

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace CLI {
class App;
}

namespace qle::cli {

enum class Format { Csv, Json };

// start:stop:count, inclusive of both ends.
struct Grid {
    double start{0.0};
    double stop{1.0};
    std::size_t count{2};

    static Grid parse(std::string_view text);
    std::vector<double> points() const;
    std::string str() const;
    bool operator==(const Grid&) const = default;
};

struct RunConfig {
    std::string command;
    std::vector<double> gamma;  // damping rates; commands sweep over them
    double omega0{1.0};
    double temperature{1.0};
    double hbar{1.0};
    double kB{1.0};
    double mass{1.0};
    double omega_max{1e3};
    double cutoff{0.0};  // 0 selects the strict-Ohmic bath where one is allowed
    std::string grid;
    std::size_t traj{0};
    std::size_t steps{0};
    double dt{0.0};
    std::uint64_t seed{1};
    std::size_t modes{0};
    Format format{Format::Csv};
    std::string out;

    bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"dist", "corr", "energy", "sde", "rwa", "microbath", "scan"};
    return names;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Binds every flag of the tool to `cfg`. Subcommands carry no options of
// their own, so flags may appear before or after the command name and the
// config file uses the same flat keys.
std::unique_ptr<CLI::App> make_app(RunConfig& cfg);

// Fills command-specific defaults for every field left unset.
void resolve_defaults(RunConfig& cfg);

// Checks the values against the preconditions of the modules they feed.
void validate(const RunConfig& cfg);

// key=value pairs for the resolved configuration, in flag spelling.
std::vector<std::pair<std::string, std::string>> to_pairs(const RunConfig& cfg);

// Re-reads an emitted parameter block ("# key=value" or "key=value" lines,
// including command=...). Returns the resolved configuration.
RunConfig parse_config_text(std::string_view text);

} // namespace qle::cli
