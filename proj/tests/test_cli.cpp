#include "doctest.h"

#include "noninfo/design.hpp"
#include "noninfo/io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace
{

const std::string kCli = NONINFO_CLI;
const std::string kConfigs = NONINFO_CONFIG_DIR;

int run(const std::string& args)
{
    const std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name)
{
    const auto p = fs::temp_directory_path() / ("noninfo_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string config(const std::string& name) { return "\"" + kConfigs + "/" + name + "\""; }

} // namespace

TEST_CASE("solve, verify and sensitivity on the Emax Jeffreys configuration")
{
    const auto dir = scratch("emax");
    REQUIRE(run("solve --config " + config("table3_jeffreys.json") + " --out " + dir.string()) == 0);
    const auto out = nlohmann::json::parse(noninfo::read_text_file((dir / "design.json").string()));
    const auto d = noninfo::design_from_json(out);
    REQUIRE(d.size() == 3);
    CHECK(std::abs(d.points()[1] - 0.9472) < 2e-3);
    CHECK(out.at("criterion") == "jeffreys");
    CHECK(out.at("verify_pass") == true);

    const auto design = (dir / "design.json").string();
    CHECK(run("verify --config " + config("table3_jeffreys.json") + " --design " + design + " --out " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "sensitivity.csv"));
    fs::remove(dir / "sensitivity.csv");
    CHECK(run("sensitivity --config " + config("table3_jeffreys.json") + " --design " + design + " --out " +
              dir.string() + " --grid 101") == 0);
    CHECK(fs::exists(dir / "sensitivity.csv"));

    // a clearly suboptimal design fails the necessary condition
    const auto bad = noninfo::make_uniform_design(std::vector<double>{0.0, 2.0, 4.0}, {0.0, 4.0});
    noninfo::write_text_file((dir / "bad.json").string(), noninfo::to_json(bad).dump());
    CHECK(run("verify --config " + config("table3_jeffreys.json") + " --design " + (dir / "bad.json").string() +
              " --out " + dir.string()) == 1);
    fs::remove_all(dir);
}

TEST_CASE("bad input exits with 2")
{
    const auto dir = scratch("bad");
    CHECK(run("solve --config " + config("emax_invalid_box.json") + " --out " + dir.string()) == 2);
    CHECK(run("solve --config " + (dir / "missing.json").string()) == 2);
    CHECK(run("verify --config " + config("table3_jeffreys.json") + " --design " + (dir / "missing.json").string()) ==
          2);
    noninfo::write_text_file((dir / "broken.json").string(), "{\"model\": ");
    CHECK(run("solve --config " + (dir / "broken.json").string()) == 2);
    CHECK(run("solve") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("solve --config " + config("table3_jeffreys.json") + " --grid 1") == 2);
    fs::remove_all(dir);
}

TEST_CASE("the unescalated quadratic designs include a failure")
{
    const auto dir = scratch("quad");
    int failures = 0;
    for (const char* name : {"table2_bayes_d_uniform.json", "table2_jeffreys.json", "table2_berger_bernardo.json"})
    {
        REQUIRE(run(std::string("solve --config ") + config(name) + " --out " + dir.string()) <= 1);
        const int rc = run(std::string("verify --config ") + config(name) + " --design " +
                           (dir / "design.json").string() + " --out " + dir.string());
        CHECK((rc == 0 || rc == 1));
        failures += rc == 1;
    }
    CHECK(failures >= 1);
    fs::remove_all(dir);
}
