#pragma once

#include <map>
#include <string>

#include "deccsp/process.hpp"

namespace deccsp {

// Data-variable store σ. Ordered map so iteration is canonical.
using LocalStore = std::map<std::string, long long>;

// Process-variable store ρ.
using GlobalStore = std::map<std::string, StdRef>;

bool store_equal(const GlobalStore& a, const GlobalStore& b);

// A configuration ((p,σ),ρ). Value-comparable so the explorer can
// merge revisited states.
struct Configuration {
    Term proc;
    LocalStore sigma;
    GlobalStore rho;

    Configuration() = default;
    Configuration(Term t, LocalStore s = {}, GlobalStore r = {})
        : proc(std::move(t)), sigma(std::move(s)), rho(std::move(r)) {}
};

bool operator==(const Configuration& a, const Configuration& b);
size_t hash_value(const Configuration& c);

struct ConfigHash {
    size_t operator()(const Configuration& c) const { return hash_value(c); }
};
struct ConfigEq {
    bool operator()(const Configuration& a, const Configuration& b) const { return a == b; }
};

}  // namespace deccsp
