#include "deccsp/model.hpp"

#include "deccsp/errors.hpp"

namespace deccsp {

Configuration ModelDefinition::initial_config() const {
    Configuration c;
    if (auto it = std_defs.find(initial_name); it != std_defs.end()) {
        c.proc = Term(it->second);
    } else if (auto ic = comp_defs.find(initial_name); ic != comp_defs.end()) {
        c.proc = Term(ic->second);
    } else {
        throw SemanticsError(SemanticsError::Kind::UnknownProcessName, initial_name,
                             "initial process '" + initial_name + "' is not defined");
    }
    c.sigma = initial_sigma;
    return c;
}

std::optional<std::vector<long long>> ModelDefinition::domain_of(const EventName& channel) const {
    EventName key(channel.parts, {});
    if (auto it = domains.find(key); it != domains.end()) return it->second;
    return std::nullopt;
}

}  // namespace deccsp
