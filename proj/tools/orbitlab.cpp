// orbitlab: volume asymptotics and lattice-orbit experiments for norm balls
// in small semisimple groups. One subcommand per scenario; every run writes
// its artifacts plus a manifest.json under --out.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orbitlab/errors.hpp"
#include "orbitlab/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConfig = 4;

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream is(path);
    if (!is) throw orbitlab::ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw orbitlab::ConfigError(std::string("config parse error: ") + e.what());
    }
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume asymptotics of norm balls and lattice orbit statistics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", condition;
    std::uint64_t seed = 1;
    int threads = 1;
    bool quiet = false;
    // volume-sweep convenience flags (merged over the config file).
    std::string sweep_group, sweep_method;
    double sweep_tmin = 0.0, sweep_tmax = 0.0;
    int sweep_points = 0;

    std::string chosen;
    for (const auto& name : orbitlab::scenario_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
        sub->callback([&chosen, name]() { chosen = name; });
        sub->add_option("--config", config_path, "JSON config file (overrides defaults)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "Monte Carlo seed");
        sub->add_option("--threads", threads, "worker threads for Monte Carlo stages");
        sub->add_flag("--quiet", quiet, "suppress the result summary on stdout");
        if (name == "audit")
            sub->add_option("--condition", condition, "uc | i1 | i2 | d1 | d2");
        if (name == "volume-sweep") {
            sub->add_option("--group", sweep_group, "sl<n> | so(p,q) | tensor(ell)");
            sub->add_option("--tmin", sweep_tmin, "smallest radius");
            sub->add_option("--tmax", sweep_tmax, "largest radius");
            sub->add_option("--points", sweep_points, "grid size (geometric)");
            sub->add_option("--method", sweep_method, "chamber | haar");
        }
    }
    CLI::App* defaults_cmd =
        app.add_subcommand("print-config", "print the default config for a scenario");
    std::string defaults_for;
    defaults_cmd->add_option("scenario", defaults_for, "scenario name")->required();
    defaults_cmd->callback([&chosen]() { chosen = "print-config"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (chosen == "print-config") {
            std::cout << orbitlab::default_config(defaults_for).dump(2) << '\n';
            return kExitOk;
        }
        nlohmann::json user_cfg = load_config(config_path);
        if (chosen == "audit" && !condition.empty()) user_cfg["condition"] = condition;
        if (chosen == "volume-sweep") {
            if (!sweep_group.empty()) user_cfg["group"] = sweep_group;
            if (!sweep_method.empty()) user_cfg["method"] = sweep_method;
            if (sweep_tmin > 0.0) user_cfg["tmin"] = sweep_tmin;
            if (sweep_tmax > 0.0) user_cfg["tmax"] = sweep_tmax;
            if (sweep_points > 0) user_cfg["points"] = sweep_points;
        }

        orbitlab::RunContext ctx;
        ctx.out_dir = out_dir;
        ctx.seed = seed;
        ctx.threads = threads;
        ctx.quiet = quiet;
        nlohmann::json cfg =
            orbitlab::merge_config(orbitlab::default_config(chosen), user_cfg, chosen);
        nlohmann::json results = orbitlab::run_scenario(chosen, user_cfg, ctx);
        orbitlab::write_manifest(ctx, chosen, cfg, results);
        if (!quiet) std::cout << results.dump(2) << '\n';
        if (results.contains("verdicts"))
            for (const auto& [key, ok] : results.at("verdicts").items())
                if (ok.is_boolean() && !ok.get<bool>()) {
                    std::cerr << "verdict failed: " << key << '\n';
                    return kExitVerdictFail;
                }
        return kExitOk;
    } catch (const orbitlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const orbitlab::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerdictFail;
    }
}
