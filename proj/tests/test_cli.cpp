#include "actlab/plan.hpp"

#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

CommandResult run_command(const std::string& args) {
    const std::string command = std::string(ACTLAB_BIN) + " " + args + " 2>&1";
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("actlab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const char* kToyPlan = R"(model = schelling
model.width = 8
model.height = 8
model.agents_per_color = 12
regimes = uniform, random
modes = by_agent
sweep.name = tolerance
sweep.values = 2, 8
seeds = 3
master_seed = 7
horizon = 10
sample_at = 10
)";

} // namespace

TEST_CASE("--help exits cleanly") {
    CHECK(run_command("--help").exit_code == 0);
    CHECK(run_command("run --help").exit_code == 0);
}

TEST_CASE("a misspelled regime exits 2 and enumerates the seven regimes") {
    const auto result = run_command("run --model schelling --regime unifrom --horizon 5");
    CHECK(result.exit_code == 2);
    for (const auto* name : {"synchronous", "ordered_sweep", "fixed_random_order", "uniform",
                             "random", "exponential", "incentive"}) {
        CHECK(result.output.find(name) != std::string::npos);
    }
}

TEST_CASE("unknown subcommands and missing flags are usage errors") {
    CHECK(run_command("frobnicate").exit_code == 2);
    CHECK(run_command("run").exit_code == 2); // --model required
    CHECK(run_command("run --model nosuch --horizon 5").exit_code == 2);
}

TEST_CASE("run: tolerance 8 prints zero moves, and is reproducible") {
    const std::string args =
        "run --model schelling --tolerance 8 --width 10 --height 10 --agents_per_color 30 "
        "--regime uniform --seed 11 --horizon 50";
    const auto first = run_command(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output.find("sample_t,metric,value") != std::string::npos);
    CHECK(first.output.find("50,moves,0") != std::string::npos);
    const auto second = run_command(args);
    CHECK(second.output == first.output);
}

TEST_CASE("run rejects fields of other models") {
    const auto result = run_command("run --model spatialpd --tolerance 3 --horizon 5");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("tolerance") != std::string::npos);
}

TEST_CASE("sweep: records and summary appear, reruns are byte-identical") {
    const auto dir = fresh_dir("sweep");
    const auto plan_path = dir / "toy.plan";
    std::ofstream(plan_path) << kToyPlan;

    const auto out_a = dir / "a";
    const auto out_b = dir / "b";
    const std::string base = "sweep --plan " + plan_path.string();
    CHECK(run_command(base + " --out " + out_a.string() + " --parallelism 2").exit_code == 0);
    CHECK(run_command(base + " --out " + out_b.string() + " --parallelism 1").exit_code == 0);

    const auto records_a = slurp(out_a / "records.csv");
    CHECK(records_a == slurp(out_b / "records.csv"));
    CHECK(slurp(out_a / "summary.csv") == slurp(out_b / "summary.csv"));

    // 2 tolerance values x 2 regimes x 3 seeds x 1 sample x 2 metrics = 24 data rows
    std::size_t lines = 0;
    for (char c : records_a) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 25); // header + 24

    SUBCASE("summarize, compare and plot consume the sweep output") {
        const auto records_path = (out_a / "records.csv").string();
        const auto summarize = run_command("summarize --records " + records_path);
        CHECK(summarize.exit_code == 0);
        CHECK(summarize.output.find("model,sweep_name") != std::string::npos);

        const auto compare = run_command(
            "compare --records " + records_path +
            " --a regime=uniform,sweep_value=2 --b regime=uniform,sweep_value=2 --metric moves");
        CHECK(compare.exit_code == 0);
        CHECK(compare.output.find("p_value: 1") != std::string::npos);

        const auto no_match = run_command(
            "compare --records " + records_path +
            " --a regime=exponential --b regime=uniform --metric moves");
        CHECK(no_match.exit_code == 2);

        const auto svg_path = (dir / "fig.svg").string();
        const auto plot = run_command("plot --summary " + (out_a / "summary.csv").string() +
                                      " --kind line --metric moves --out " + svg_path);
        CHECK(plot.exit_code == 0);
        const auto svg = slurp(svg_path);
        std::size_t polylines = 0;
        for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) {
            ++polylines;
        }
        CHECK(polylines == 2);

        const auto bad_metric = run_command("plot --summary " + (out_a / "summary.csv").string() +
                                            " --kind line --metric nope --out " +
                                            (dir / "no.svg").string());
        CHECK(bad_metric.exit_code == 2);
        CHECK(bad_metric.output.find("moves") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "no.svg"));
    }
}

TEST_CASE("sweep rejects an invalid plan with exit 2") {
    const auto dir = fresh_dir("badplan");
    const auto plan_path = dir / "bad.plan";
    std::ofstream(plan_path) << "model = schelling\nregimes = uniform\nmodes = by_agent\n"
                                "seeds = 0\nmaster_seed = 1\nhorizon = 10\nsample_at = 10\n";
    const auto result = run_command("sweep --plan " + plan_path.string() + " --out " +
                                    (dir / "out").string());
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("seeds") != std::string::npos);
}

TEST_CASE("bundled preset plans parse and expand to the documented sizes") {
    const fs::path plans(ACTLAB_PLANS_DIR);
    const auto fig2 = actlab::read_plan((plans / "schelling_fig2.plan").string());
    CHECK(actlab::expand_plan(fig2).size() == 3600);
    const auto fig3 = actlab::read_plan((plans / "dpd_fig3.plan").string());
    CHECK(actlab::expand_plan(fig3).size() == 2000);
    const auto nowakmay = actlab::read_plan((plans / "nowakmay_sync_vs_async.plan").string());
    CHECK(actlab::expand_plan(nowakmay).size() == 20);
}
