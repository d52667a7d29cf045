#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "deccsp/config.hpp"
#include "deccsp/model.hpp"
#include "deccsp/semantics.hpp"

namespace deccsp {

struct Bounds {
    int max_depth = 64;
    long max_states = 100000;
    long max_traces = 50000;  // cap on enumerated maximal paths
};

struct LtsEdge {
    int src;
    Label label;
    const char* rule;
    int dst;
};

// Rooted labelled transition system from bounded BFS. States are
// deduplicated by structural configuration equality; states whose
// successors were cut by the budget are recorded in `truncated`.
struct Lts {
    std::vector<Configuration> states;
    std::vector<LtsEdge> edges;
    std::vector<std::vector<int>> out;  // per-state edge indices
    int initial = 0;
    std::set<int> truncated;
    std::vector<int> depth;  // BFS depth per state
};

Lts build_lts(const Configuration& init, const ModelDefinition& model,
              const EngineOptions& opts, const Bounds& bounds);

enum class Completion : uint8_t { Done, Fault, Yielded, Deadlock, Truncated };
const char* completion_name(Completion c);

struct Trace {
    std::vector<Label> labels;
    Completion completion = Completion::Deadlock;

    std::string str(bool elide_tau) const;
    auto operator<=>(const Trace&) const = default;
};

// All maximal label sequences within the depth bound, deduplicated and
// sorted. τ steps are always explored and counted; elision is left to
// presentation.
std::vector<Trace> traces(const Configuration& init, const ModelDefinition& model,
                          const EngineOptions& opts, const Bounds& bounds);

struct Deadlock {
    int state;
    std::vector<Label> witness;  // path from the initial state
};

// States with no outgoing transitions that are not completions: either the
// initial state or reachable by some non-terminal transition, and not
// truncated.
std::vector<Deadlock> find_deadlocks(const Lts& lts);

// One fault path through a transaction boundary: the labels before the
// block-ending step, and the observables after it up to the end of the path.
struct CompensationTrace {
    std::vector<Label> prefix;
    std::vector<Label> phase;       // observables only
    Completion completion = Completion::Deadlock;

    auto operator<=>(const CompensationTrace&) const = default;
};

std::vector<CompensationTrace> compensation_traces(const Configuration& init,
                                                   const ModelDefinition& model,
                                                   const EngineOptions& opts,
                                                   const Bounds& bounds);

// Canonical text form: header, one state line, one transition line each,
// sorted. Byte-stable across runs.
std::string serialize_lts(const Lts& lts);
std::string lts_to_dot(const Lts& lts);
std::string lts_to_json(const Lts& lts);
std::string traces_to_json(const std::vector<Trace>& ts, bool elide_tau);

}  // namespace deccsp
