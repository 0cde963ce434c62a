#pragma once

#include "kernel_families.hpp"
#include "pde_sim.hpp"

#include <map>
#include <string>

namespace backstep {

// Full toolkit configuration: simulation parameters plus kernel-solver
// options. Parsed from plain `key = value` text, one pair per line, with
// `#` comments. lambda1, lambda2 and scenario are required in files;
// everything else has documented defaults.
struct ToolkitConfig {
    SimConfig sim;
    KernelOptions kernel;
    bool lambda1_set = false;
    bool lambda2_set = false;
    bool scenario_set = false;

    void require_complete() const;          // throws Errc::Parse when a required key is missing
    std::map<std::string, std::string> echo() const; // canonical key = value form
};

// Apply one key/value pair; line is used in error messages (0 = not from a
// file). Unknown keys and malformed values throw Errc::Parse.
void config_apply(ToolkitConfig& cfg, const std::string& key, const std::string& value,
                  int line = 0);

ToolkitConfig parse_config_text(const std::string& text);
ToolkitConfig parse_config_file(const std::string& path);

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name); // throws Errc::Parse

std::string preset_to_string(const IcPreset& p);
IcPreset preset_from_string(const std::string& s); // throws Errc::Parse

} // namespace backstep
