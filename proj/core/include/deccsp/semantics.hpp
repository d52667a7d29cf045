#pragma once

#include <string>
#include <vector>

#include "deccsp/config.hpp"
#include "deccsp/errors.hpp"
#include "deccsp/model.hpp"

namespace deccsp {

struct Transition {
    Label label;
    const char* rule;  // SOS rule identifier, see docs/rules.md
    Configuration target;
};

bool operator==(const Transition& a, const Transition& b);

// The complete finite successor set of a configuration: every conclusion of
// every rule instance whose premises hold, in deterministic order (rule
// group as in the calculus, left operand before right, then label order).
std::vector<Transition> step(const Configuration& config, const ModelDefinition& model,
                             const EngineOptions& opts);

long long eval_int(const IntExprRef& e, const LocalStore& sigma);
bool eval_bool(const BoolExprRef& b, const LocalStore& sigma);

// Relational image of a label under R; unmapped observables pass through,
// as do τ and terminals.
std::vector<Label> apply_renaming(const Label& label, const RenamingRelation& ren);

// All rule identifiers the engine can emit, in rule-group order.
const std::vector<std::string>& all_rule_names();

}  // namespace deccsp
