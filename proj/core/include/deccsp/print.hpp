#pragma once

#include <string>

#include "deccsp/config.hpp"
#include "deccsp/model.hpp"
#include "deccsp/process.hpp"

namespace deccsp {

// Canonical, reparseable pretty-printing (internal-only forms print as
// <p, q>, <<pp, p>> and emit(ω), which have no surface syntax).
std::string print_proc(const StdRef& p);
std::string print_proc(const CompRef& pp);
std::string print_term(const Term& t);

std::string print_sigma(const LocalStore& sigma);
std::string print_rho(const GlobalStore& rho);
std::string print_config(const Configuration& c);

// Whole-model listing in surface syntax; parses back to an equal model.
std::string print_model(const ModelDefinition& model);

}  // namespace deccsp
