#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "fsonoma/csv.hpp"
#include "fsonoma/scenario.hpp"

namespace fs = std::filesystem;
using namespace fsonoma;

namespace {

const fs::path kScenarios{FSONOMA_SCENARIO_DIR};

// Small valid scenario; callers append or replace lines.
const std::string kBase = R"(power_dbm_start = 0
power_dbm_stop = 20
power_dbm_step = 10
d1_m = 1000
d2_m = 2000
kappa_per_m = 4.2e-3
alpha = 2.23
beta = 1.54
rate1 = 0.1
rate2 = 0.5
schemes = optimal, oma
sic = imperfect
samples = 20000
seed = 7
chunk_size = 4096
workers = 1
)";

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("fsonoma_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream(p) << text;
        return p;
    }
};

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
    const auto pos = text.find(key + " =");
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos);
    return text.replace(pos, end - pos, line);
}

int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    args.insert(args.begin(), "fsonoma");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(res.ec == std::errc());
    return v;
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("base scenario parses") {
        const auto cfg = scenario::parse_scenario(kBase);
        CHECK(cfg.powers() == std::vector<double>{0.0, 10.0, 20.0});
        CHECK(cfg.schemes.size() == 2);
        CHECK(cfg.mc.n_samples == 20000);
        CHECK(cfg.mc.workers == 1);
        CHECK(cfg.problems().empty());
        const auto cases = scenario::expand_cases(cfg);
        REQUIRE(cases.size() == 1);
        CHECK(cases[0].suffix.empty());
        CHECK(cases[0].link.rate2 == 0.5);
    }

    TEST_CASE("parse errors") {
        CHECK_THROWS_AS(scenario::parse_scenario(kBase + "colour = blue\n"), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(kBase + "seed = 8\n"), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(kBase + "just words\n"), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(replace_line(kBase, "d1_m", "d1_m = 1km")), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(replace_line(kBase, "samples", "samples = -3")), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(replace_line(kBase, "schemes", "schemes = optimal, random")),
                        scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(replace_line(kBase, "schemes", "")), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(kBase + "rate_offset = 0.05\n"), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::parse_scenario(replace_line(kBase, "rate2", "")), scenario::ConfigError);
        CHECK_THROWS_AS(scenario::load_scenario("/nonexistent/none.scenario"), scenario::ConfigError);
    }

    TEST_CASE("invariant violations are all reported") {
        auto text = replace_line(kBase, "alpha", "alpha = 1.54");
        text = replace_line(text, "d2_m", "d2_m = -5");
        text = replace_line(text, "schemes", "schemes =");
        const auto cfg = scenario::parse_scenario(text);
        CHECK(cfg.problems().size() == 3);
        CHECK_THROWS_AS(cfg.validate(), scenario::ConfigError);
    }

    TEST_CASE("rate offsets and kappa lists expand to cases") {
        auto text = replace_line(kBase, "rate1", "rate_offset = -0.05, 0.05");
        text = replace_line(text, "rate2", "");
        text = replace_line(text, "kappa_per_m", "kappa_per_m = 0.43e-3, 20e-3");
        const auto cases = scenario::expand_cases(scenario::parse_scenario(text));
        REQUIRE(cases.size() == 4);
        CHECK(cases[0].suffix == "_kappa0.00043_eps-0.05");
        CHECK(cases[3].suffix == "_kappa0.02_eps+0.05");
        CHECK(cases[1].link.rate1 == doctest::Approx(noma::critical_rate() + 0.05).epsilon(1e-15));
        CHECK(cases[2].kappa_per_m == 20e-3);
    }
}

TEST_SUITE("csv") {
    TEST_CASE("numbers round trip exactly") {
        for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, 4.9e-324, -2.5e-7}) {
            CHECK(parse_double(csv::format_number(v)) == v);
        }
        CHECK(csv::format_optional(std::nullopt).empty());
        CHECK(csv::split_line("a,,b,") == std::vector<std::string>{"a", "", "b", ""});
    }
}

TEST_SUITE("cli") {
    TEST_CASE("check on the shipped scenarios") {
        std::ostringstream out;
        std::ostringstream err;
        CHECK(cli::check_scenario(kScenarios / "fig3.scenario", out, err) == cli::kOk);
        CHECK(out.str().find("thr1*thr2=0.7945") != std::string::npos);
        CHECK(out.str().find("NoFloor") != std::string::npos);

        std::ostringstream out4;
        CHECK(cli::check_scenario(kScenarios / "fig4.scenario", out4, err) == cli::kOk);
        const std::string s = out4.str();
        const auto eps = s.find("eps=+0.05");
        REQUIRE(eps != std::string::npos);
        const auto line_end = s.find("Floor", s.find("thr1*thr2", eps));
        CHECK(s.substr(line_end - 2, 7) != "NoFloor");
        CHECK(err.str().empty());
    }

    TEST_CASE("check rejects equal shape parameters") {
        TempDir dir;
        const auto p = dir.write("bad.scenario", replace_line(kBase, "alpha", "alpha = 1.54"));
        std::ostringstream out;
        std::ostringstream err;
        CHECK(cli::check_scenario(p, out, err) == cli::kConfigError);
        CHECK(err.str().find("alpha") != std::string::npos);
    }

    TEST_CASE("run writes a CSV that parses back") {
        TempDir dir;
        const auto sc = dir.write("base.scenario", kBase);
        const auto csv_path = dir.path / "out.csv";
        std::ostringstream log;
        std::ostringstream err;
        REQUIRE(cli::run_scenario(sc, csv_path, {}, log, err) == cli::kOk);
        std::istringstream in(read(csv_path));
        std::string line;
        std::getline(in, line);
        CHECK(line == csv::kHeader);
        int rows = 0;
        while (std::getline(in, line)) {
            const auto f = csv::split_line(line);
            REQUIRE(f.size() == 9);
            CHECK((f[1] == "optimal" || f[1] == "oma"));
            CHECK(f[2] == "imperfect");
            if (f[8] == "mc_tail_floor") {
                CHECK(f[4].empty());
            } else {
                const double p = parse_double(f[4]);
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                CHECK(parse_double(f[5]) > 0.0);
            }
            CHECK(f[6].empty() == (f[1] != "optimal"));
            ++rows;
        }
        CHECK(rows == 3 * 2 * 2);
    }

    TEST_CASE("reruns are byte-identical and overrides change the output") {
        TempDir dir;
        const auto sc = dir.write("base.scenario", kBase);
        std::ostringstream log;
        std::ostringstream err;
        REQUIRE(cli::run_scenario(sc, dir.path / "a.csv", {}, log, err) == cli::kOk);
        REQUIRE(cli::run_scenario(sc, dir.path / "b.csv", {}, log, err) == cli::kOk);
        CHECK(read(dir.path / "a.csv") == read(dir.path / "b.csv"));
        auto threaded = replace_line(kBase, "workers", "workers = 4");
        REQUIRE(cli::run_scenario(dir.write("t.scenario", threaded), dir.path / "t.csv", {}, log, err) == cli::kOk);
        CHECK(read(dir.path / "a.csv") == read(dir.path / "t.csv"));
        cli::RunOverrides o;
        o.seed = 8;
        REQUIRE(cli::run_scenario(sc, dir.path / "c.csv", o, log, err) == cli::kOk);
        CHECK(read(dir.path / "a.csv") != read(dir.path / "c.csv"));
    }

    TEST_CASE("multi-case scenarios write one file per case") {
        TempDir dir;
        auto text = replace_line(kBase, "kappa_per_m", "kappa_per_m = 1e-3, 2e-3");
        text = replace_line(text, "samples", "samples = 2000");
        std::ostringstream log;
        std::ostringstream err;
        REQUIRE(cli::run_scenario(dir.write("m.scenario", text), dir.path / "m.csv", {}, log, err) == cli::kOk);
        CHECK(fs::exists(dir.path / "m_kappa0.001.csv"));
        CHECK(fs::exists(dir.path / "m_kappa0.002.csv"));
        CHECK_FALSE(fs::exists(dir.path / "m.csv"));
    }

    TEST_CASE("exit codes") {
        TempDir dir;
        std::ostringstream out;
        std::ostringstream err;
        CHECK(cli_main({"run", "/nonexistent/x.scenario", "--out", (dir.path / "x.csv").string()}, out, err) ==
              cli::kConfigError);
        CHECK(cli_main({"frobnicate"}, out, err) == cli::kConfigError);
        CHECK(cli_main({"run", (kScenarios / "fig3.scenario").string()}, out, err) == cli::kConfigError);
        CHECK(cli_main({"run", (kScenarios / "fig3.scenario").string(), "--out", "x.csv", "--samples", "0"}, out,
                       err) == cli::kConfigError);
        CHECK(cli_main({"run", dir.write("e.scenario", replace_line(kBase, "schemes", "schemes =")).string(), "--out",
                        (dir.path / "e.csv").string()},
                       out, err) == cli::kConfigError);
        const auto starved = dir.write("q.scenario", kBase + "quad_max_subdivisions = 1\n");
        std::ostringstream err2;
        CHECK(cli_main({"run", starved.string(), "--out", (dir.path / "q.csv").string()}, out, err2) ==
              cli::kNumericFailure);
        CHECK(err2.str().find("numeric failure") != std::string::npos);
        CHECK(cli_main({"check", (kScenarios / "fig3.scenario").string()}, out, err) == cli::kOk);
        CHECK(cli_main({"run", dir.write("ok.scenario", kBase).string(), "--out", (dir.path / "ok.csv").string(),
                        "--samples", "1000"},
                       out, err) == cli::kOk);
    }
}
