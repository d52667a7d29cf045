#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deccsp/config.hpp"
#include "deccsp/process.hpp"

namespace deccsp {

// What happens to the ! / ? label when a transaction block ends abnormally:
// Propagate emits it outward (the literal block rules); Contain relabels it
// τ so the compensation runs without requiring the environment to
// synchronise on a terminal.
enum class FaultMode : uint8_t { Propagate, Contain };

// Retrieval of a process variable never assigned: error out, or read SKIP.
enum class UnassignedVarMode : uint8_t { Error, DefaultSkip };

struct EngineOptions {
    bool interruptible_atoms = false;   // gate for the atomic-interruption rules
    FaultMode fault_mode = FaultMode::Propagate;
    UnassignedVarMode unassigned_vars = UnassignedVarMode::Error;
    int max_channel_enum = 1024;        // cap on enumerated input instantiations

    auto operator<=>(const EngineOptions&) const = default;
};

struct ModelDefinition {
    std::map<std::string, StdRef> std_defs;
    std::map<std::string, CompRef> comp_defs;
    std::map<EventName, std::vector<long long>> domains;  // per-channel value sets
    std::map<std::string, EventSet> syncset_aliases;
    EngineOptions options;
    int default_depth = 64;
    long default_max_states = 100000;

    std::string initial_name;
    LocalStore initial_sigma;

    bool has_def(const std::string& name) const {
        return std_defs.count(name) || comp_defs.count(name);
    }

    // The initial configuration starts at the body of the initial definition.
    Configuration initial_config() const;

    // Domain lookup for a channel (by parts). Empty optional when undeclared.
    std::optional<std::vector<long long>> domain_of(const EventName& channel) const;
};

}  // namespace deccsp
