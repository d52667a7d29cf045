#include "deccsp/events.hpp"

namespace deccsp {

TerminalEvent compose_terminal(TerminalEvent w, TerminalEvent w2) {
    //        !  ?  ✓
    //    !   !  !  !
    //    ?   !  ?  ?
    //    ✓   !  ?  ✓
    if (w == TerminalEvent::Fault || w2 == TerminalEvent::Fault) return TerminalEvent::Fault;
    if (w == TerminalEvent::Yield || w2 == TerminalEvent::Yield) return TerminalEvent::Yield;
    return TerminalEvent::Done;
}

const char* terminal_symbol(TerminalEvent w) {
    switch (w) {
        case TerminalEvent::Fault: return "!";
        case TerminalEvent::Yield: return "?";
        case TerminalEvent::Done: return "✓";
    }
    return "?";
}

bool EventName::valid() const {
    if (parts.empty()) return false;
    for (const auto& p : parts) {
        if (p.empty()) return false;
        for (char c : p) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '.' || c == '?' || c == '!' ||
                c == ',' || c == '{' || c == '}' || c == '(' || c == ')')
                return false;
        }
    }
    return true;
}

std::string EventName::str() const {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '.';
        out += parts[i];
    }
    for (long long v : data) {
        out += '.';
        out += std::to_string(v);
    }
    return out;
}

static size_t mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

size_t hash_value(const EventName& e) {
    size_t h = 0xe7e7;
    for (const auto& p : e.parts) h = mix(h, std::hash<std::string>{}(p));
    for (long long v : e.data) h = mix(h, std::hash<long long>{}(v));
    return h;
}

std::string Label::str() const {
    switch (kind) {
        case Kind::Observable: return event.str();
        case Kind::Tau: return "τ";
        case Kind::Terminal: return terminal_symbol(term);
    }
    return "?";
}

size_t hash_value(const Label& l) {
    size_t h = static_cast<size_t>(l.kind) * 0x51ed;
    if (l.kind == Label::Kind::Observable) h = mix(h, hash_value(l.event));
    if (l.kind == Label::Kind::Terminal) h = mix(h, static_cast<size_t>(l.term));
    return h;
}

}  // namespace deccsp
