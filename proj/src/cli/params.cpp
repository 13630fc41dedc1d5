#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "oscstat/gas.hpp"
#include "oscstat/oracle.hpp"
#include "oscstat/statistics.hpp"
#include "schema.hpp"

namespace oscstat::cli {

using nlohmann::json;
using detail::ParamSpec;
using detail::ParamType;

std::string_view to_string(JobKind kind) noexcept {
    switch (kind) {
        case JobKind::Spectrum: return "spectrum";
        case JobKind::Gas: return "gas";
        case JobKind::Chain: return "chain";
        case JobKind::Stats: return "stats";
        case JobKind::Bounds: return "bounds";
        case JobKind::Oracle: return "oracle";
        case JobKind::Sweep: return "sweep";
    }
    return "unknown";
}

namespace detail {

namespace {

constexpr std::int64_t kMaxSweepSteps = 10'000;

std::vector<ParamSpec> with(std::vector<ParamSpec> base, std::initializer_list<ParamSpec> extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

const std::vector<ParamSpec>& oscillator_params() {
    static const std::vector<ParamSpec> params{
        {"hbar", ParamType::Real, 1.0, "action constant"},
        {"mass", ParamType::Real, 1.0, "oscillator mass"},
        {"omega", ParamType::Real, 1.0, "angular frequency"},
    };
    return params;
}

const std::vector<ParamSpec>& policy_params() {
    static const std::vector<ParamSpec> params{
        {"rel_tol", ParamType::Real, 1e-10, "relative series tolerance"},
        {"abs_tol", ParamType::Real, 1e-14, "absolute series tolerance"},
        {"max_terms", ParamType::Integer, 10'000'000, "cap on summed series terms"},
    };
    return params;
}

const std::vector<ParamSpec>& spectrum_params() {
    static const auto params = with(oscillator_params(), {
        {"mu", ParamType::Real, 0.0, "chemical potential"},
        {"qmax", ParamType::Integer, 10, "highest level listed"},
        {"epsilon", ParamType::Real, 0.0, "boundary tolerance on omega_eff"},
    });
    return params;
}

const std::vector<ParamSpec>& gas_params() {
    static const auto params = with(oscillator_params(), {
        {"mu", ParamType::Real, 0.0, "chemical potential"},
        {"box_length", ParamType::Real, 1.0, "box side L"},
        {"trans_unit", ParamType::Real, nullptr, "translational unit 4 pi^2 hbar^2/(2 m L^2); overrides box_length"},
        {"kmax", ParamType::Integer, 3, "translational modes -kmax..kmax"},
        {"qmax", ParamType::Integer, 5, "vibrational levels 0..qmax"},
    });
    return params;
}

const std::vector<ParamSpec>& chain_params() {
    static const auto params = with(oscillator_params(), {
        {"n", ParamType::Integer, 4, "number of oscillators"},
        {"coupling", ParamType::Real, 0.0, "coupling constant c"},
        {"mu", ParamType::Real, 0.0, "chemical potential"},
        {"levels", ParamType::IntegerList, json::array(), "level q_s per mode (default all 0)"},
    });
    return params;
}

const std::vector<ParamSpec>& stats_params() {
    static const auto params = [] {
        auto p = with(oscillator_params(), {
            {"beta", ParamType::Real, 1.0, "inverse temperature"},
            {"mu", ParamType::Real, 0.0, "chemical potential"},
            {"stat", ParamType::Text, "fermi", "bose | fermi"},
            {"qmax", ParamType::Integer, 10, "highest level listed"},
        });
        p.insert(p.end(), policy_params().begin(), policy_params().end());
        return p;
    }();
    return params;
}

const std::vector<ParamSpec>& bounds_params() {
    static const auto params = with(policy_params(), {
        {"stat", ParamType::Text, "fermi", "bose | fermi"},
        {"mu", ParamType::Real, 0.0, "chemical potential (reduced units)"},
    });
    return params;
}

const std::vector<ParamSpec>& oracle_params() {
    static const auto params = with(oscillator_params(), {
        {"beta", ParamType::Real, 1.0, "inverse temperature"},
        {"mu", ParamType::Real, 0.0, "chemical potential"},
        {"stat", ParamType::Text, "fermi", "bose | fermi"},
        {"qmax", ParamType::Integer, 4, "ladder modes 0..qmax"},
        {"energies", ParamType::RealList, json::array(), "explicit mode energies (overrides the ladder)"},
        {"cutoff", ParamType::Integer, 20, "Bose per-mode occupation cutoff"},
    });
    return params;
}

const std::vector<ParamSpec>& sweep_params() {
    static const std::vector<ParamSpec> params{
        {"job", ParamType::Text, nullptr, "kind of the swept job"},
        {"param", ParamType::Text, nullptr, "real-valued parameter to sweep"},
        {"from", ParamType::Real, nullptr, "first grid value"},
        {"to", ParamType::Real, nullptr, "last grid value"},
        {"steps", ParamType::Integer, nullptr, "number of grid points"},
    };
    return params;
}

const ParamSpec* find_spec(std::span<const ParamSpec> specs, std::string_view name) {
    const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == name; });
    return it == specs.end() ? nullptr : &*it;
}

std::string type_name(ParamType type) {
    switch (type) {
        case ParamType::Real: return "a number";
        case ParamType::Integer: return "an integer";
        case ParamType::Text: return "a string";
        case ParamType::RealList: return "a list of numbers";
        case ParamType::IntegerList: return "a list of integers";
    }
    return "a value";
}

bool is_integral(const json& v) {
    if (v.is_number_integer()) return true;
    if (!v.is_number_float()) return false;
    const double d = v.get<double>();
    return std::isfinite(d) && std::floor(d) == d && std::abs(d) < 9e15;
}

/// Type-checks one config value and normalises integers.
json typed_value(const ParamSpec& spec, const json& v) {
    auto fail = [&] { return ConfigError("key \"" + std::string(spec.name) + "\" must be " + type_name(spec.type)); };
    switch (spec.type) {
        case ParamType::Real:
            if (!v.is_number()) throw fail();
            return v.get<double>();
        case ParamType::Integer:
            if (!is_integral(v)) throw fail();
            return v.is_number_integer() ? v.get<std::int64_t>() : static_cast<std::int64_t>(v.get<double>());
        case ParamType::Text:
            if (!v.is_string()) throw fail();
            return v;
        case ParamType::RealList: {
            if (!v.is_array()) throw fail();
            json out = json::array();
            for (const auto& e : v) {
                if (!e.is_number()) throw fail();
                out.push_back(e.get<double>());
            }
            return out;
        }
        case ParamType::IntegerList: {
            if (!v.is_array()) throw fail();
            json out = json::array();
            for (const auto& e : v) {
                if (!is_integral(e)) throw fail();
                out.push_back(static_cast<std::int64_t>(e.get<double>()));
            }
            return out;
        }
    }
    throw fail();
}

/// Applies defaults and rejects unknown or missing keys.
json resolve(std::span<const ParamSpec> specs, const json& given) {
    json params = json::object();
    for (const auto& [key, value] : given.items()) {
        const ParamSpec* spec = find_spec(specs, key);
        if (spec == nullptr) throw ConfigError("unknown key \"" + key + "\"");
        params[key] = typed_value(*spec, value);
    }
    for (const auto& spec : specs) {
        const std::string key(spec.name);
        if (params.contains(key)) continue;
        if (spec.default_value.is_null() && spec.name != "trans_unit") {
            throw ConfigError("missing required key \"" + key + "\"");
        }
        params[key] = spec.default_value;
    }
    return params;
}

void require_at_least(const json& params, std::string_view key, std::int64_t min) {
    if (integer(params, key) < min) {
        throw ConfigError("key \"" + std::string(key) + "\" must be >= " + std::to_string(min));
    }
}

StatisticsKind statistics_kind(const json& params) {
    const auto s = text(params, "stat");
    if (s == "bose") return StatisticsKind::Bose;
    if (s == "fermi") return StatisticsKind::Fermi;
    throw ConfigError("key \"stat\" must be \"bose\" or \"fermi\", got \"" + s + "\"");
}

OscillatorParams oscillator(const json& params) {
    return {real(params, "hbar"), real(params, "mass"), real(params, "omega")};
}

TruncationPolicy truncation(const json& params) {
    return {real(params, "rel_tol"), real(params, "abs_tol"), integer(params, "max_terms")};
}

Job finish_job(JobKind kind, const json& given, std::string output, OutputFormat format) {
    Job job;
    job.kind = kind;
    job.output = std::move(output);
    job.format = format;
    if (kind != JobKind::Sweep) {
        job.params = resolve(schema(kind), given);
        check_preconditions(kind, job.params);
        return job;
    }

    // Sweep: split the sweep's own keys from the inner job's.
    json own = json::object();
    json inner = json::object();
    for (const auto& [key, value] : given.items()) {
        (find_spec(sweep_params(), key) != nullptr ? own : inner)[key] = value;
    }
    own = resolve(sweep_params(), own);
    const auto inner_kind = kind_from_string(text(own, "job"));
    if (!inner_kind || *inner_kind == JobKind::Sweep) {
        throw ConfigError("key \"job\" must name a non-sweep job kind, got \"" + text(own, "job") + "\"");
    }
    const std::string param = text(own, "param");
    const ParamSpec* swept = find_spec(schema(*inner_kind), param);
    if (swept == nullptr || swept->type != ParamType::Real) {
        throw ConfigError("key \"param\": \"" + param + "\" is not a real-valued parameter of " +
                          std::string(to_string(*inner_kind)) + " jobs");
    }
    if (inner.contains(param)) throw ConfigError("key \"" + param + "\" is swept and must not be given");
    require_at_least(own, "steps", 1);
    if (integer(own, "steps") > kMaxSweepSteps) {
        throw ConfigError("key \"steps\" must be <= " + std::to_string(kMaxSweepSteps));
    }
    inner[param] = real(own, "from");
    inner = resolve(schema(*inner_kind), inner);
    job.params = own;
    job.params.update(inner);
    for (double value : sweep_grid(job.params)) check_preconditions(*inner_kind, sweep_point(job.params, value));
    return job;
}

OutputFormat format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("key \"format\" must be \"csv\" or \"json\", got \"" + name + "\"");
}

}  // namespace

std::span<const ParamSpec> schema(JobKind kind) {
    switch (kind) {
        case JobKind::Spectrum: return spectrum_params();
        case JobKind::Gas: return gas_params();
        case JobKind::Chain: return chain_params();
        case JobKind::Stats: return stats_params();
        case JobKind::Bounds: return bounds_params();
        case JobKind::Oracle: return oracle_params();
        case JobKind::Sweep: return sweep_params();
    }
    return {};
}

std::span<const ParamSpec> all_inner_params() {
    static const auto params = [] {
        std::vector<ParamSpec> out;
        for (auto kind : {JobKind::Spectrum, JobKind::Gas, JobKind::Chain, JobKind::Stats, JobKind::Bounds,
                          JobKind::Oracle}) {
            for (const auto& spec : schema(kind)) {
                if (find_spec(out, spec.name) == nullptr) out.push_back(spec);
            }
        }
        return out;
    }();
    return params;
}

std::optional<JobKind> kind_from_string(std::string_view name) {
    for (auto kind : {JobKind::Spectrum, JobKind::Gas, JobKind::Chain, JobKind::Stats, JobKind::Bounds,
                      JobKind::Oracle, JobKind::Sweep}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

json convert_flag(const ParamSpec& spec, const std::string& text) {
    auto fail = [&] {
        return ConfigError("flag --" + std::string(spec.name) + " must be " + type_name(spec.type) + ", got \"" +
                           text + "\"");
    };
    auto parse_real = [&](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
        return v;
    };
    auto parse_integer = [&](std::string_view s) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
        return v;
    };
    auto split = [&](auto parse) {
        json out = json::array();
        if (text.empty()) return out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse(item));
        return out;
    };
    switch (spec.type) {
        case ParamType::Real: return parse_real(text);
        case ParamType::Integer: return parse_integer(text);
        case ParamType::Text: return text;
        case ParamType::RealList: return split(parse_real);
        case ParamType::IntegerList: return split(parse_integer);
    }
    throw fail();
}

double real(const json& params, std::string_view key) {
    return params.at(std::string(key)).get<double>();
}

std::int64_t integer(const json& params, std::string_view key) {
    return params.at(std::string(key)).get<std::int64_t>();
}

std::string text(const json& params, std::string_view key) {
    return params.at(std::string(key)).get<std::string>();
}

void check_preconditions(JobKind kind, const json& params) {
    switch (kind) {
        case JobKind::Spectrum:
            oscillator(params).validate();
            require_at_least(params, "qmax", 0);
            if (!(real(params, "epsilon") >= 0.0)) throw ConfigError("key \"epsilon\" must be >= 0");
            return;
        case JobKind::Gas:
            if (params.at("trans_unit").is_null()) {
                (void)GasParams(oscillator(params), real(params, "box_length"));
            } else {
                (void)GasParams::with_translational_unit(oscillator(params), real(params, "trans_unit"));
            }
            require_at_least(params, "kmax", 0);
            require_at_least(params, "qmax", 0);
            return;
        case JobKind::Chain: {
            oscillator(params).validate();
            require_at_least(params, "n", 1);
            const auto& levels = params.at("levels");
            if (!levels.empty() && static_cast<std::int64_t>(levels.size()) != integer(params, "n")) {
                throw MalformedInputError("coupled_chain", "levels has " + std::to_string(levels.size()) +
                                                               " entries but n = " +
                                                               std::to_string(integer(params, "n")));
            }
            for (const auto& q : levels) {
                if (q.get<std::int64_t>() < 0) throw MalformedInputError("coupled_chain", "levels must be >= 0");
            }
            if (!(real(params, "coupling") >= 0.0)) throw MalformedInputError("coupled_chain", "coupling must be >= 0");
            return;
        }
        case JobKind::Stats: {
            const auto p = oscillator(params);
            p.validate();
            Thermo{real(params, "beta"), real(params, "mu")}.validate();
            truncation(params).validate();
            require_at_least(params, "qmax", 0);
            if (statistics_kind(params) == StatisticsKind::Bose && !(real(params, "mu") < mode_energy(0, p))) {
                throw DomainError("statistics", "Bose statistics need mu < hbar*omega/2 = " +
                                                    std::to_string(mode_energy(0, p)) + ", got mu = " +
                                                    std::to_string(real(params, "mu")));
            }
            return;
        }
        case JobKind::Bounds:
            truncation(params).validate();
            if (statistics_kind(params) == StatisticsKind::Bose && !(real(params, "mu") < 0.5)) {
                throw DomainError("series_engine", "Bose bound needs mu < 1/2 in reduced units, got mu = " +
                                                       std::to_string(real(params, "mu")));
            }
            return;
        case JobKind::Oracle: {
            const auto p = oscillator(params);
            p.validate();
            const Thermo t{real(params, "beta"), real(params, "mu")};
            t.validate();
            require_at_least(params, "qmax", 0);
            require_at_least(params, "cutoff", 0);
            const auto kind_stat = statistics_kind(params);
            std::size_t modes = static_cast<std::size_t>(integer(params, "qmax")) + 1;
            std::vector<double> energies;
            if (!params.at("energies").empty()) {
                energies = params.at("energies").get<std::vector<double>>();
                modes = energies.size();
            } else {
                energies = ModeSet::ladder(p, integer(params, "qmax")).energies;
            }
            (void)configuration_count(modes, kind_stat, integer(params, "cutoff"));
            if (kind_stat == StatisticsKind::Bose) {
                for (std::size_t i = 0; i < energies.size(); ++i) {
                    if (!(t.beta * (energies[i] - t.mu) > 0.0)) {
                        throw DomainError("fock_oracle", "Bose mode " + std::to_string(i) + " has energy <= mu");
                    }
                }
            }
            return;
        }
        case JobKind::Sweep: return;
    }
}

std::vector<double> sweep_grid(const json& params) {
    const double from = real(params, "from");
    const double to = real(params, "to");
    const std::int64_t steps = integer(params, "steps");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    for (std::int64_t i = 0; i < steps; ++i) {
        if (steps == 1) {
            grid.push_back(from);
        } else if (i == steps - 1) {
            grid.push_back(to);
        } else {
            grid.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1));
        }
    }
    return grid;
}

json sweep_point(const json& params, double value) {
    const auto inner_kind = *kind_from_string(text(params, "job"));
    json point = json::object();
    for (const auto& spec : schema(inner_kind)) {
        const std::string key(spec.name);
        point[key] = params.at(key);
    }
    point[text(params, "param")] = value;
    return point;
}

}  // namespace detail

Job parse_job_json(std::string_view text) {
    json config;
    try {
        config = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (!config.contains("kind") || !config["kind"].is_string()) {
        throw ConfigError("config needs a string key \"kind\"");
    }
    const auto kind = detail::kind_from_string(config["kind"].get<std::string>());
    if (!kind) throw ConfigError("unknown job kind \"" + config["kind"].get<std::string>() + "\"");

    std::string output = "-";
    OutputFormat format = OutputFormat::Csv;
    json given = json::object();
    for (const auto& [key, value] : config.items()) {
        if (key == "kind") continue;
        if (key == "out" || key == "format") {
            if (!value.is_string()) throw ConfigError("key \"" + key + "\" must be a string");
            if (key == "out") output = value.get<std::string>();
            else format = detail::format_from_string(value.get<std::string>());
            continue;
        }
        given[key] = value;
    }
    return detail::finish_job(*kind, given, output, format);
}

Job parse_job_args(const std::vector<std::string>& args) {
    if (args.empty()) throw ConfigError("missing job kind; try --help");
    if (args[0] == "run") {
        if (args.size() != 2) throw ConfigError("usage: run <config.json>");
        std::ifstream in(args[1]);
        if (!in) throw ConfigError("cannot read config file \"" + args[1] + "\"");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_job_json(buffer.str());
    }
    const auto kind = detail::kind_from_string(args[0]);
    if (!kind) throw ConfigError("unknown job kind \"" + args[0] + "\"");

    CLI::App app{"oscstat " + args[0]};
    app.name(args[0]);
    std::map<std::string, std::string> values;
    std::string output = "-";
    std::string format = "csv";
    app.add_option("--out", output, "output path, - for stdout");
    app.add_option("--format", format, "csv | json");
    std::vector<const ParamSpec*> specs;
    auto register_spec = [&](const ParamSpec& spec) {
        specs.push_back(&spec);
        app.add_option("--" + std::string(spec.name), values[std::string(spec.name)], std::string(spec.help));
    };
    for (const auto& spec : detail::schema(*kind)) register_spec(spec);
    if (*kind == JobKind::Sweep) {
        for (const auto& spec : detail::all_inner_params()) register_spec(spec);
    }
    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());
    app.allow_extras();
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    for (const auto& extra : app.remaining()) {
        if (extra.rfind("--", 0) == 0) throw ConfigError("unknown key \"" + extra.substr(2, extra.find('=') - 2) + "\"");
    }
    if (!app.remaining().empty()) throw ConfigError("unexpected argument \"" + app.remaining().front() + "\"");

    json given = json::object();
    for (const ParamSpec* spec : specs) {
        const std::string key(spec->name);
        if (app.count("--" + key) == 0 || given.contains(key)) continue;
        given[key] = detail::convert_flag(*spec, values[key]);
    }
    return detail::finish_job(*kind, given, output, detail::format_from_string(format));
}

}  // namespace oscstat::cli
