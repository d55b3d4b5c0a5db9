#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace firmcore::cli {

enum class Command { decompose, ddecompose, densest, ddensest, bff, prune, stats, bench };
enum class Format { tsv, json };

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitInvalidFlags = 2;
inline constexpr int kExitResource = 3;

struct RunConfig {
    Command command = Command::decompose;
    std::string input;
    bool directed = false;
    std::optional<std::size_t> lambda;
    std::optional<double> beta;
    std::vector<double> gamma;
    std::optional<double> min_sup;
    std::optional<std::size_t> min_size;
    std::size_t threads = 1;
    std::string output;  // empty: standard output
    std::optional<Format> format;
};

/// Command-specific checks that need no graph. Returns an error message.
std::optional<std::string> validate(const RunConfig& config);

/// Parses argv into a config, or returns the exit code to terminate with
/// (0 after --help, kExitInvalidFlags on bad flags).
std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                std::ostream& err);

/// Executes one command. Results go to config.output or `out`; diagnostics to
/// `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace firmcore::cli
