#pragma once

#include <string>
#include <vector>

#include "deccsp/errors.hpp"
#include "deccsp/model.hpp"

namespace deccsp {

// Parse a model file. Performs all static checks: name resolution,
// process-variable freshness, indexed-parallel expansion, set
// well-formedness. Throws ParseError on the first problem.
ModelDefinition parse_model(const std::string& text);

// Parse a single process term against an existing model's definitions
// (used by tests and the REPL). The result is standard or compensable
// depending on the syntax.
Term parse_term(const std::string& text, const ModelDefinition& model = {});

struct FreshnessViolation {
    std::string var;
    std::vector<std::string> sites;  // definitions binding it
};

// Process variables bound by more than one variable compensation pair.
std::vector<FreshnessViolation> check_freshness(const ModelDefinition& model);

// Expand ∥ over an index range into a right-nested empty-syncset parallel,
// substituting the index variable in each copy. lo > hi is an error.
StdRef expand_indexed_parallel(const std::string& index_var, long long lo, long long hi,
                               const StdRef& body);
CompRef expand_indexed_parallel(const std::string& index_var, long long lo, long long hi,
                                const CompRef& body);

// Substitute a literal for a data variable throughout a term's expressions.
StdRef substitute_data_var(const StdRef& p, const std::string& var, long long value);
CompRef substitute_data_var(const CompRef& pp, const std::string& var, long long value);

}  // namespace deccsp
