#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace deccsp {

// Terminal events, ordered ! < ? < ✓ so enumerations are deterministic.
enum class TerminalEvent : uint8_t { Fault = 0, Yield = 1, Done = 2 };

// The ω&ω' composition: fault absorbs, yield beats success.
TerminalEvent compose_terminal(TerminalEvent w, TerminalEvent w2);

const char* terminal_symbol(TerminalEvent w);  // "!", "?", "✓"

// An event name: dotted atom parts plus optional integer data components.
// "a", "a.b", "Pack.3", "Order.1.4.0". Equality is structural over both.
struct EventName {
    std::vector<std::string> parts;
    std::vector<long long> data;

    EventName() = default;
    explicit EventName(std::string atom) : parts{std::move(atom)} {}
    EventName(std::vector<std::string> p, std::vector<long long> d)
        : parts(std::move(p)), data(std::move(d)) {}

    bool valid() const;
    std::string str() const;

    auto operator<=>(const EventName&) const = default;
    bool operator==(const EventName&) const = default;
};

size_t hash_value(const EventName& e);

// A transition label: an observable event, the silent step, or a terminal.
struct Label {
    enum class Kind : uint8_t { Observable = 0, Tau = 1, Terminal = 2 };

    Kind kind = Kind::Tau;
    EventName event;          // Kind::Observable only
    TerminalEvent term = TerminalEvent::Fault;  // Kind::Terminal only

    static Label observable(EventName e) {
        Label l;
        l.kind = Kind::Observable;
        l.event = std::move(e);
        return l;
    }
    static Label tau() { return Label{}; }
    static Label terminal(TerminalEvent w) {
        Label l;
        l.kind = Kind::Terminal;
        l.term = w;
        return l;
    }

    bool is_observable() const { return kind == Kind::Observable; }
    bool is_tau() const { return kind == Kind::Tau; }
    bool is_terminal() const { return kind == Kind::Terminal; }

    std::string str() const;  // "a.3", "τ", "!", "?", "✓"

    // Observable (lexicographic) < Tau < Terminal (! < ? < ✓).
    auto operator<=>(const Label&) const = default;
    bool operator==(const Label&) const = default;
};

size_t hash_value(const Label& l);

}  // namespace deccsp
