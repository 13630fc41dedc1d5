#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "oscstat/cli/job.hpp"

namespace oscstat::cli::detail {

enum class ParamType { Real, Integer, Text, RealList, IntegerList };

struct ParamSpec {
    std::string_view name;
    ParamType type;
    nlohmann::json default_value;  // null: no default (required)
    std::string_view help;
};

/// Parameters accepted by a kind, in declaration order.
[[nodiscard]] std::span<const ParamSpec> schema(JobKind kind);

/// Union of every non-sweep kind's parameters, deduplicated by name.
[[nodiscard]] std::span<const ParamSpec> all_inner_params();

[[nodiscard]] std::optional<JobKind> kind_from_string(std::string_view name);

/// Converts a flag value to the JSON type of its parameter.
[[nodiscard]] nlohmann::json convert_flag(const ParamSpec& spec, const std::string& text);

/// Typed accessors over validated params.
double real(const nlohmann::json& params, std::string_view key);
std::int64_t integer(const nlohmann::json& params, std::string_view key);
std::string text(const nlohmann::json& params, std::string_view key);

/// Module preconditions of one (non-sweep) parameter set; throws the
/// library error describing the first violation.
void check_preconditions(JobKind kind, const nlohmann::json& params);

/// Grid of a validated sweep job.
[[nodiscard]] std::vector<double> sweep_grid(const nlohmann::json& params);

/// Inner parameter set of a sweep at one grid value.
[[nodiscard]] nlohmann::json sweep_point(const nlohmann::json& params, double value);

}  // namespace oscstat::cli::detail
