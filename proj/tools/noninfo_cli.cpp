#include "noninfo/config.hpp"
#include "noninfo/equivalence.hpp"
#include "noninfo/io.hpp"
#include "noninfo/optimizer.hpp"
#include "noninfo/parallel.hpp"
#include "noninfo/tables.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

using namespace noninfo;
namespace fs = std::filesystem;

namespace
{

enum Exit
{
    kOk = 0,
    kFail = 1,
    kBadInput = 2,
    kOptimizerFailure = 3,
};

struct Overrides
{
    std::string config;
    std::string design;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<int> nodes;
    std::optional<double> tol;
    bool escalate = false;
    std::vector<std::string> only;
};

void apply(const Overrides& ov, RunConfig& c)
{
    if (ov.out)
        c.out_dir = *ov.out;
    if (ov.seed)
        c.optimizer.seed = *ov.seed;
    if (ov.grid)
        c.grid = *ov.grid;
    if (ov.nodes)
        c.quadrature.nodes_per_coord = *ov.nodes;
    if (ov.tol)
        c.tol = *ov.tol;
}

std::optional<RunConfig> load(const Overrides& ov)
{
    try
    {
        auto c = load_run_config(ov.config);
        apply(ov, c);
        validate(c);
        return c;
    }
    catch (const std::exception& e)
    {
        std::cerr << "noninfo: " << e.what() << "\n";
        return std::nullopt;
    }
}

std::string fmt(const char* f, double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void print_design(const Design& d)
{
    std::cout << "       x_i     xi(x_i)\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        std::cout << fmt("%10.4f", d.points()[i]) << "  " << fmt("%10.4f", d.weights()[i]) << "\n";
}

void print_report(const SensitivityReport& r)
{
    std::cout << "necessary condition: " << (r.pass ? "pass" : "FAIL") << "  bound " << fmt("%.4f", r.bound)
              << "  max violation " << fmt("%.3e", r.max_violation) << "  weighted average "
              << fmt("%.10f", r.weighted_average) << "\n";
}

int cmd_solve(const Overrides& ov)
{
    const auto cfg = load(ov);
    if (!cfg)
        return kBadInput;
    try
    {
        const Criterion crit(cfg->model.build(), cfg->criterion, cfg->box(), cfg->quadrature);
        OptimizeResult res;
        SensitivityReport rep;
        bool escalated = false;
        if (ov.escalate)
        {
            auto vd = optimize_and_verify(crit, cfg->optimizer, cfg->tol, cfg->grid);
            res = std::move(vd.result);
            rep = std::move(vd.report);
            escalated = vd.escalated;
        }
        else
        {
            res = optimize_design(crit, cfg->optimizer);
            rep = verify_design(res.design, crit, cfg->grid, cfg->tol);
        }

        auto j = to_json(res.design);
        j["criterion"] = std::string(to_string(cfg->criterion));
        j["objective"] = res.value;
        j["value"] = crit.value(res.design);
        j["escalated"] = escalated;
        j["verify_pass"] = rep.pass;
        const auto path = (fs::path(cfg->out_dir) / cfg->design_file).string();
        write_text_file(path, dump_json17(j));

        std::cout << "criterion " << to_string(cfg->criterion) << "\n";
        print_design(res.design);
        std::cout << "criterion value " << fmt("%.10g", crit.value(res.design)) << "  objective "
                  << fmt("%.10g", res.value) << (escalated ? "  (escalated to m+1)" : "") << "\n";
        print_report(rep);
        std::cout << "design written to " << path << "\n";
        return kOk;
    }
    catch (const std::exception& e)
    {
        std::cerr << "noninfo solve: " << e.what() << "\n";
        return kOptimizerFailure;
    }
}

// verify and sensitivity share everything except the exit status on violations
int cmd_check(const Overrides& ov, bool strict)
{
    const auto cfg = load(ov);
    if (!cfg)
        return kBadInput;
    Design d;
    try
    {
        d = design_from_json(nlohmann::json::parse(read_text_file(ov.design)));
    }
    catch (const std::exception& e)
    {
        std::cerr << "noninfo: design " << ov.design << ": " << e.what() << "\n";
        return kBadInput;
    }
    try
    {
        const Criterion crit(cfg->model.build(), cfg->criterion, cfg->box(), cfg->quadrature);
        const auto rep = verify_design(d, crit, cfg->grid, cfg->tol);
        const auto path = (fs::path(cfg->out_dir) / cfg->sensitivity_file).string();
        if (fs::path(path).has_parent_path())
            fs::create_directories(fs::path(path).parent_path());
        write_sensitivity_csv(rep, path);
        print_design(d);
        print_report(rep);
        std::cout << "sensitivity written to " << path << "\n";
        return strict && !rep.pass ? kFail : kOk;
    }
    catch (const std::exception& e)
    {
        std::cerr << "noninfo: " << e.what() << "\n";
        return kBadInput;
    }
}

int cmd_tables(const Overrides& ov)
{
    TableOptions o;
    if (ov.seed)
        o.seed = *ov.seed;
    if (ov.grid)
        o.grid = *ov.grid;
    if (ov.nodes)
        o.quadrature.nodes_per_coord = *ov.nodes;
    if (ov.tol)
        o.verify_tol = *ov.tol;
    o.only = ov.only;
    const std::string dir = ov.out.value_or("tables");
    try
    {
        const auto rep = reproduce_tables(o);
        write_tables(rep, dir);
        std::cout << format_tables(rep) << "report written to " << dir << "\n";
        return rep.pass() ? kOk : kFail;
    }
    catch (const std::exception& e)
    {
        std::cerr << "noninfo tables: " << e.what() << "\n";
        return kBadInput;
    }
}

} // namespace

int main(int argc, char** argv)
{
    configure_threads_from_env();

    CLI::App app{"Bayesian optimal designs under non-informative priors"};
    app.require_subcommand(1);
    Overrides ov;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", ov.out, "Output directory");
        sub->add_option("--seed", ov.seed, "Optimizer seed");
        sub->add_option("--grid", ov.grid, "Sensitivity grid size")->check(CLI::Range(2, 1000000));
        sub->add_option("--nodes", ov.nodes, "Quadrature nodes per parameter coordinate")->check(CLI::Range(1, 200));
        sub->add_option("--tol", ov.tol, "Necessary-condition tolerance")->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "Optimize a design for a run config");
    solve->add_option("--config", ov.config, "Run config (JSON)")->required();
    solve->add_flag("--escalate", ov.escalate, "Retry with m+1 points if the necessary condition fails");
    common(solve);

    auto* verify = app.add_subcommand("verify", "Check a design against the necessary condition");
    verify->add_option("--config", ov.config, "Run config (JSON)")->required();
    verify->add_option("--design", ov.design, "Design file (JSON)")->required();
    common(verify);

    auto* sens = app.add_subcommand("sensitivity", "Write the sensitivity function of a design as CSV");
    sens->add_option("--config", ov.config, "Run config (JSON)")->required();
    sens->add_option("--design", ov.design, "Design file (JSON)")->required();
    common(sens);

    auto* tables = app.add_subcommand("tables", "Reproduce the published design tables");
    tables->add_option("--only", ov.only, "Restrict to table ids (1, 2, 2b, 3, 5)")->delimiter(',');
    common(tables);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }

    if (*solve)
        return cmd_solve(ov);
    if (*verify)
        return cmd_check(ov, true);
    if (*sens)
        return cmd_check(ov, false);
    return cmd_tables(ov);
}
