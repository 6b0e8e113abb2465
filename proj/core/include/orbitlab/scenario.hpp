#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbitlab/norms.hpp"
#include "orbitlab/rootsys.hpp"

namespace orbitlab {

// Scenario runners: each takes a strict JSON config (unknown keys are a
// ConfigError), writes CSV artifacts under the output directory, and returns
// a result JSON that also lands in the run manifest.

struct RunContext {
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
    bool quiet = false;
    std::vector<std::string> outputs; // files written so far (manifest record)
};

std::vector<std::string> scenario_names();

// Full default config for a scenario; user configs may override any subset
// of these keys and nothing else.
nlohmann::json default_config(const std::string& scenario);

// Overlay user config onto the defaults, rejecting unknown keys.
nlohmann::json merge_config(const nlohmann::json& defaults, const nlohmann::json& user,
                            const std::string& where);

// "sl2", "sl3", ..., "so(p,q)", "tensor(ell)"
GroupSpec parse_group(const std::string& s);
// {"type": "entrywise"|"max-column"|"spiral"|"weighted", "p": 2|"inf", "c":..., "weights":[...]}
NormSpec parse_norm(const nlohmann::json& j);

nlohmann::json run_scenario(const std::string& name, const nlohmann::json& user_cfg,
                            RunContext& ctx);

std::uint64_t fnv1a(const std::string& s);
void write_manifest(RunContext& ctx, const std::string& scenario,
                    const nlohmann::json& cfg, const nlohmann::json& results);

} // namespace orbitlab
