#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "orbitlab/scenario.hpp"

using namespace orbitlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("orbitlab-test-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

RunContext make_ctx(const TempDir& d) {
    RunContext ctx;
    ctx.out_dir = d.path;
    ctx.seed = 1;
    ctx.threads = 1;
    ctx.quiet = true;
    return ctx;
}

} // namespace

TEST_CASE("every scenario has a self-consistent default config") {
    for (const auto& name : scenario_names()) {
        auto def = default_config(name);
        CHECK(def.is_object());
        // Defaults merged with an empty user config are the defaults.
        CHECK(merge_config(def, nlohmann::json::object(), name) == def);
    }
    CHECK_THROWS_AS(default_config("no-such-scenario"), ConfigError);
}

TEST_CASE("config merging is strict about unknown keys") {
    auto def = default_config("torus");
    CHECK_THROWS_AS(merge_config(def, {{"Tee", 10.0}}, "torus"), ConfigError);
    CHECK_THROWS_AS(merge_config(def, nlohmann::json::array(), "torus"), ConfigError);
    auto merged = merge_config(def, {{"T", 42.0}}, "torus");
    CHECK(merged.at("T").get<double>() == 42.0);
    CHECK(merged.at("budget") == def.at("budget"));
}

TEST_CASE("group parsing") {
    CHECK(parse_group("sl2").name() == "SL(2,R)");
    CHECK(parse_group("sl3").name() == "SL(3,R)");
    CHECK(parse_group("so(2,3)").name() == "SO(2,3)");
    CHECK(parse_group("tensor(3)").name() == "SL2xSL2-tensor-l3");
    CHECK_THROWS_AS(parse_group("sp4"), ConfigError);
    CHECK_THROWS_AS(parse_group(""), ConfigError);
}

TEST_CASE("norm parsing") {
    NormSpec n = parse_norm({{"type", "entrywise"}, {"p", 4.0}});
    CHECK(std::get<EntrywisePNorm>(n).p == 4.0);
    n = parse_norm({{"type", "entrywise"}, {"p", "inf"}});
    CHECK(std::get<EntrywisePNorm>(n).p == kPInf);
    n = parse_norm({{"type", "max-column"}});
    CHECK(std::get<MaxColumnNorm>(n).p == 2.0);
    n = parse_norm({{"type", "spiral"}, {"c", 1.3}});
    CHECK(std::get<SpiralNorm>(n).c == 1.3);
    CHECK_THROWS_AS(parse_norm({{"type", "entrywise"}, {"q", 1.0}}), ConfigError);
    CHECK_THROWS_AS(parse_norm({{"type", "frobenius"}}), ConfigError);
    CHECK_THROWS_AS(parse_norm(nlohmann::json::array()), ConfigError);
}

TEST_CASE("fnv1a hashes match the reference vectors") {
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("torus scenario end to end on a small ball") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    auto res = run_scenario("torus", {{"T", 60.0}}, ctx);
    CHECK(res.contains("verdicts"));
    CHECK(res["verdicts"]["rational_control_large"].get<bool>());
    CHECK(res["max_abs_irrational"].get<double>() < 0.5);
    CHECK(fs::exists(dir.path / "torus.csv"));

    write_manifest(ctx, "torus", default_config("torus"), res);
    CHECK(fs::exists(dir.path / "manifest.json"));
    std::ifstream in(dir.path / "manifest.json");
    nlohmann::json manifest = nlohmann::json::parse(in);
    CHECK(manifest["scenario"] == "torus");
    CHECK(manifest["seed"].get<std::uint64_t>() == 1);
    CHECK(manifest["results"]["count"] == res["count"]);
    CHECK(manifest["outputs"].size() >= 1);
}

TEST_CASE("ledrappier scenario tracks the ambient integral at small T") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    auto res = run_scenario(
        "ledrappier", {{"schedule", {60.0, 120.0}}, {"angular_nodes", 16}}, ctx);
    CHECK(res["final_abs_err"].get<double>() < 0.10);
    CHECK(res.contains("verdicts"));
    CHECK(fs::exists(dir.path / "ledrappier.csv"));
}

TEST_CASE("volume sweep recovers the T^2 law for SL2") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    auto res = run_scenario("volume-sweep",
                            {{"tmin", 20.0}, {"tmax", 80.0}, {"points", 3},
                             {"method", "chamber"}},
                            ctx);
    CHECK(res["expected_power"].get<double>() == 2.0);
    auto rows = res["rows"];
    CHECK(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double slope = rows[i]["running_slope"].get<double>();
        CHECK(slope == doctest::Approx(2.0).epsilon(0.01));
    }
    CHECK_THROWS_AS(
        run_scenario("volume-sweep", {{"method", "nope"}}, ctx), ConfigError);
}

TEST_CASE("audit scenario dispatches and writes the report") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    auto res = run_scenario("audit", {{"condition", "uc"}, {"samples", 16}}, ctx);
    CHECK(res["condition"] == "uc");
    CHECK(res["verdict"] == "Pass");
    CHECK(fs::exists(dir.path / "audit_uc.json"));
    CHECK_THROWS_AS(run_scenario("audit", {{"condition", "zz"}}, ctx), ConfigError);
}

TEST_CASE("translate-modular rejects a bad base point") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    CHECK_THROWS_AS(
        run_scenario("translate-modular",
                     {{"g0", {{2.0, 0.0}, {0.0, 1.0}}}}, ctx),
        ConfigError);
}

TEST_CASE("unknown scenario is a config error") {
    TempDir dir;
    RunContext ctx = make_ctx(dir);
    CHECK_THROWS_AS(run_scenario("nope", nlohmann::json::object(), ctx), ConfigError);
}
