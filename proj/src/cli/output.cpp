#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oscstat/cli/job.hpp"

namespace oscstat::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        cell);
}

ordered_json cell_json(const Cell& cell) {
    return std::visit([](const auto& v) { return ordered_json(v); }, cell);
}

std::string metadata_text(const json& value) {
    if (value.is_number_float()) return format_double(value.get<double>());
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

struct ErrorInfo {
    int exit_code;
    std::string kind;
    std::string origin;
    std::string message;
};

void write_error(const ErrorInfo& info, std::ostream& err) {
    ordered_json error;
    error["error"]["kind"] = info.kind;
    error["error"]["origin"] = info.origin;
    error["error"]["message"] = info.message;
    error["error"]["exit_code"] = info.exit_code;
    err << error.dump() << '\n';
}

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("cli", what) {}
};

/// Maps an in-flight exception to its exit status and error object.
ErrorInfo classify_current_exception() {
    try {
        throw;
    } catch (const ConfigError& e) {
        return {kExitUsage, "config", e.origin(), e.what()};
    } catch (const IoError& e) {
        return {kExitUsage, "io", e.origin(), e.what()};
    } catch (const ConvergenceError& e) {
        return {kExitNonConvergence, "convergence", e.origin(), e.what()};
    } catch (const DomainError& e) {
        return {kExitDomain, "domain", e.origin(), e.what()};
    } catch (const MalformedInputError& e) {
        return {kExitDomain, "malformed_input", e.origin(), e.what()};
    } catch (const std::exception& e) {
        return {1, "internal", "cli", e.what()};
    }
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ec == std::errc() ? ptr : buffer.data());
}

void write_csv(const Report& report, std::ostream& out) {
    for (const auto& [key, value] : report.metadata.items()) out << "# " << key << '=' << metadata_text(value) << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_escape(report.columns[i]);
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
        out << '\n';
    }
    for (const auto& [label, values] : report.summaries) {
        for (const auto& [key, value] : values) {
            out << "# summary";
            if (!label.empty()) out << '[' << label << ']';
            out << ' ' << key << '=' << cell_text(value) << '\n';
        }
    }
}

void write_json(const Report& report, std::ostream& out) {
    ordered_json root;
    root["metadata"] = ordered_json::object();
    for (const auto& [key, value] : report.metadata.items()) root["metadata"][key] = ordered_json::parse(value.dump());
    root["columns"] = report.columns;
    root["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = cell_json(row[i]);
        root["rows"].push_back(std::move(obj));
    }
    root["summary"] = ordered_json::array();
    for (const auto& [label, values] : report.summaries) {
        ordered_json block;
        block["label"] = label;
        block["values"] = ordered_json::object();
        for (const auto& [key, value] : values) block["values"][key] = cell_json(value);
        root["summary"].push_back(std::move(block));
    }
    out << root.dump(2) << '\n';
}

int execute_job(const Job& job, std::ostream& out, std::ostream& err) {
    try {
        const Report report = run_job(job);
        std::ostringstream rendered;
        if (job.format == OutputFormat::Json) {
            write_json(report, rendered);
        } else {
            write_csv(report, rendered);
        }
        if (job.output == "-") {
            out << rendered.str();
        } else {
            std::ofstream file(job.output, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open output file \"" + job.output + "\"");
            file << rendered.str();
            if (!file.flush()) throw IoError("failed writing output file \"" + job.output + "\"");
        }
        return kExitOk;
    } catch (...) {
        const auto info = classify_current_exception();
        write_error(info, err);
        return info.exit_code;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
        out << "usage: oscstat <kind> [--key value ...] [--out PATH] [--format csv|json]\n"
               "       oscstat run <config.json>\n"
               "kinds: spectrum gas chain stats bounds oracle sweep\n"
               "       oscstat <kind> --help lists the parameters of a kind\n";
        return args.empty() ? kExitUsage : kExitOk;
    }
    Job job;
    try {
        job = parse_job_args(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitOk;
    } catch (...) {
        const auto info = classify_current_exception();
        write_error(info, err);
        return info.exit_code;
    }
    return execute_job(job, out, err);
}

}  // namespace oscstat::cli
