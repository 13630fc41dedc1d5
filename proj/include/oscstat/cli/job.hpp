#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oscstat/errors.hpp"

namespace oscstat::cli {

enum class JobKind { Spectrum, Gas, Chain, Stats, Bounds, Oracle, Sweep };
enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string_view to_string(JobKind kind) noexcept;

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitDomain = 3,
    kExitNonConvergence = 4,
};

/// Malformed configuration: unknown key, wrong type, unreadable file.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("cli", what) {}
};

/// A series did not reach the requested tolerance within max_terms.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Thrown by parse_job_args when help was requested; carries the help text.
class HelpRequested : public std::exception {
public:
    explicit HelpRequested(std::string text) : text_(std::move(text)) {}
    [[nodiscard]] const char* what() const noexcept override { return text_.c_str(); }

private:
    std::string text_;
};

/// A validated job. `params` holds every effective parameter of the kind,
/// defaults included, keyed by name; it is what gets echoed as metadata.
struct Job {
    JobKind kind = JobKind::Spectrum;
    nlohmann::json params = nlohmann::json::object();
    std::string output = "-";  // "-" writes to the provided stream
    OutputFormat format = OutputFormat::Csv;
};

/// Parses a JSON config `{"kind": ..., "<param>": ..., "out": ..., "format": ...}`.
/// Throws ConfigError for malformed input and DomainError / MalformedInputError
/// when the parameters violate a module precondition.
[[nodiscard]] Job parse_job_json(std::string_view text);

/// Parses `<kind> --key value ...` (argv without the program name) or
/// `run <config.json>`.
[[nodiscard]] Job parse_job_args(const std::vector<std::string>& args);

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Tabular result of one job. Sweeps prepend the swept column and carry one
/// summary block per grid point.
struct Report {
    JobKind kind = JobKind::Spectrum;
    nlohmann::json metadata = nlohmann::json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, Cell>>>> summaries;
};

/// Runs the computation. Throws library errors and ConvergenceError.
[[nodiscard]] Report run_job(const Job& job);

/// Shortest decimal representation that round-trips to the same double.
[[nodiscard]] std::string format_double(double value);

void write_csv(const Report& report, std::ostream& out);
void write_json(const Report& report, std::ostream& out);

/// Runs the job and writes the report to job.output (or `out` for "-").
/// On failure writes a JSON error object to `err` and returns its exit code.
int execute_job(const Job& job, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parse, execute, map errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oscstat::cli
