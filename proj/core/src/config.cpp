#include "deccsp/config.hpp"

namespace deccsp {

static size_t mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

bool store_equal(const GlobalStore& a, const GlobalStore& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !proc_equal(ia->second, ib->second)) return false;
    }
    return true;
}

bool operator==(const Configuration& a, const Configuration& b) {
    return a.sigma == b.sigma && term_equal(a.proc, b.proc) && store_equal(a.rho, b.rho);
}

size_t hash_value(const Configuration& c) {
    size_t h = c.proc.hash();
    for (const auto& [k, v] : c.sigma) {
        h = mix(h, std::hash<std::string>{}(k));
        h = mix(h, std::hash<long long>{}(v));
    }
    for (const auto& [k, v] : c.rho) {
        h = mix(h, std::hash<std::string>{}(k));
        h = mix(h, v->hash);
    }
    return h;
}

}  // namespace deccsp
