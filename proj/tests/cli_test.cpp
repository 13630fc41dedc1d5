#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscstat/cli/job.hpp"

using namespace oscstat;
using namespace oscstat::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("flags build a job with defaults echoed") {
    const Job job = parse_job_args({"spectrum", "--omega", "1", "--mu", "2.5", "--qmax", "10"});
    CHECK(job.kind == JobKind::Spectrum);
    CHECK(job.params.at("mu").get<double>() == 2.5);
    CHECK(job.params.at("qmax").get<std::int64_t>() == 10);
    CHECK(job.params.at("hbar").get<double>() == 1.0);
    CHECK(job.params.at("epsilon").get<double>() == 0.0);
    CHECK(job.format == OutputFormat::Csv);
}

TEST_CASE("unknown keys are named") {
    try {
        (void)parse_job_json(R"({"kind": "spectrum", "omeg": 1})");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("omeg") != std::string::npos);
    }
    const auto r = run({"spectrum", "--omeg", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("\"omeg\\\"") != std::string::npos);
    CHECK_THROWS_AS((void)parse_job_json("{not json"), ConfigError);
    CHECK_THROWS_AS((void)parse_job_json(R"({"kind": "spectrum", "qmax": "ten"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_job_json(R"({"kind": "nonsense"})"), ConfigError);
}

TEST_CASE("module preconditions are domain errors") {
    CHECK_THROWS_AS((void)parse_job_args({"stats", "--stat", "bose", "--mu", "0.6", "--omega", "1"}), DomainError);
    const auto r = run({"stats", "--stat", "bose", "--mu", "0.6", "--omega", "1"});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    const auto error = nlohmann::json::parse(r.err);
    CHECK(error.at("error").at("exit_code") == 3);
    CHECK(error.at("error").at("kind") == "domain");
    CHECK(run({"spectrum", "--omega", "-1"}).code == 3);
}

TEST_CASE("spectrum report") {
    const auto r = run({"spectrum", "--mu", "2.5", "--omega", "1", "--qmax", "5"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "q,energy,omega_eff,accessible");
    const char* expected[] = {"false", "false", "false", "true", "true", "true"};
    for (int q = 0; q <= 5; ++q) {
        CHECK(lines[q + 1].substr(lines[q + 1].rfind(',') + 1) == expected[q]);
    }
    CHECK(r.out.find("# summary q_min=2\n") != std::string::npos);
    CHECK(r.out.find("# mu=2.5\n") != std::string::npos);
}

TEST_CASE("bounds report passes") {
    const auto r = run({"bounds", "--mu", "0", "--stat", "fermi"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "mu,S_numeric,tail_bound,lemma_bound,pass");
    CHECK(lines[1].ends_with(",true"));
}

TEST_CASE("column order of every kind") {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"gas", "--mu", "0.3"}, "k,q,energy,effective_term,q_min_k"},
        {{"chain", "--n", "3", "--coupling", "0.5"}, "s,omega_s"},
        {{"stats", "--mu", "0"}, "level,occupation"},
        {{"oracle", "--stat", "fermi", "--mu", "1"}, "mode,closed_form,oracle_value,abs_error"},
    };
    for (const auto& [args, header] : cases) {
        const auto r = run(args);
        REQUIRE(r.code == 0);
        CHECK(data_lines(r.out).at(0) == header);
    }
}

TEST_CASE("sweep prepends the swept column") {
    const auto r = run({"sweep", "--job", "spectrum", "--param", "mu", "--from", "0", "--to", "3", "--steps", "7",
                        "--qmax", "4"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    CHECK(lines[0] == "mu,q,energy,omega_eff,accessible");
    CHECK(lines.size() == 1 + 7 * 5);
    CHECK(lines[1].starts_with("0,0,"));
    CHECK(lines.back().starts_with("3,4,"));

    std::vector<double> q_min;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) {
        if (line.starts_with("# summary[mu=")) q_min.push_back(std::stod(line.substr(line.find("q_min=") + 6)));
    }
    REQUIRE(q_min.size() == 7);
    for (std::size_t i = 1; i < q_min.size(); ++i) CHECK(q_min[i] > q_min[i - 1]);

    CHECK(run({"sweep", "--job", "spectrum", "--param", "qmax", "--from", "0", "--to", "3", "--steps", "2"}).code == 2);
    CHECK(run({"sweep", "--job", "stats", "--param", "mu", "--from", "0", "--to", "0.6", "--steps", "4", "--stat",
               "bose"})
              .code == 3);
}

TEST_CASE("json output mirrors csv") {
    const auto r = run({"chain", "--n", "2", "--levels", "0,0", "--mu", "0.2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("columns") == nlohmann::json::array({"s", "omega_s"}));
    CHECK(doc.at("rows").size() == 2);
    const auto& summary = doc.at("summary").at(0).at("values");
    CHECK(summary.at("grouped_discrepancy") == true);
    CHECK(summary.at("chain_effective_energy").get<double>() == doctest::Approx(0.6));
    CHECK(summary.at("grouped_form_energy").get<double>() == doctest::Approx(1.6));
    CHECK(doc.at("metadata").at("kind") == "chain");
}

TEST_CASE("config files and output files") {
    const auto dir = std::filesystem::temp_directory_path() / "oscstat_cli_test";
    std::filesystem::create_directories(dir);
    const auto config = dir / "job.json";
    const auto output = dir / "out.csv";
    std::ofstream(config) << R"({"kind": "stats", "mu": 0.25, "stat": "fermi", "out": ")" << output.string()
                          << R"("})";
    const auto r = run({"run", config.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(output);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("level,occupation\n") != std::string::npos);
    CHECK(run({"run", (dir / "missing.json").string()}).code == 2);
    CHECK(run({"spectrum", "--out", (dir / "no" / "such" / "dir.csv").string()}).code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("non-convergence exits with status 4") {
    const auto r = run({"stats", "--mu", "0", "--max_terms", "2"});
    CHECK(r.code == 4);
    CHECK(nlohmann::json::parse(r.err).at("error").at("kind") == "convergence");
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    for (double v : {0.6825694789672743, 1.0 / 3.0, 4.356289841965251e-05}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("usage and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto help = run({"stats", "--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("--beta") != std::string::npos);
}
