#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "deccsp/events.hpp"
#include "deccsp/expr.hpp"

namespace deccsp {

// One suffix of a communication event: ".e" carries data, "?x" inputs
// into the local store, "!e" outputs an evaluated value.
struct CommItem {
    enum class Kind : uint8_t { Dot, In, Out };
    Kind kind;
    IntExprRef expr;  // Dot/Out
    std::string var;  // In
};

// An event occurrence in a process body: base name plus suffixes,
// per the grammar  a ::= Names | a?l | a!e | a.e
struct CommEvent {
    std::vector<std::string> channel;
    std::vector<CommItem> items;

    bool plain() const { return items.empty(); }
    bool has_input() const;
    EventName channel_name() const { return EventName(channel, {}); }
    std::string str() const;
};

CommEvent comm_plain(std::string atom);
CommEvent comm_plain(EventName name);

bool comm_equal(const CommEvent& a, const CommEvent& b);
size_t hash_value(const CommEvent& e);

struct StdProc;
struct CompProc;
using StdRef = std::shared_ptr<const StdProc>;
using CompRef = std::shared_ptr<const CompProc>;

// Sorted, deduplicated set of event names. Membership of a concrete event
// is by parts, with data compared only when the entry carries data itself.
using EventSet = std::vector<EventName>;

EventSet make_event_set(std::vector<EventName> names);
bool set_matches(const EventSet& set, const EventName& event);

struct RenamePair {
    EventName from, to;
    auto operator<=>(const RenamePair&) const = default;
};
using RenamingRelation = std::vector<RenamePair>;  // sorted, deduplicated

RenamingRelation make_renaming(std::vector<RenamePair> pairs);

enum class StdKind : uint8_t {
    Nil,        // ∅ / STOP: no transitions
    Skip,
    Throw,
    Yield,
    Atomic,     // ev
    Prefix,     // ev -> a
    Seq,        // a ; b
    ExtChoice,  // a [] b
    IntChoice,  // a |~| b
    Parallel,   // a ||set b
    Handler,    // a [> b
    Hide,       // a \ set
    Rename,     // a [[ren]]
    Block,      // [ body ]
    If,         // If cond Then a Else b
    While,      // While cond Do a
    Named,      // name
    Assign,     // name := a
    ProcVar,    // name (process variable)
    AuxStd,     // <a, b>: run a, then continue as b (internal)
    Emit,       // performs term and stops (internal)
};

enum class CompKind : uint8_t {
    Pair,       // a / b
    VarPair,    // a / name
    Seq,
    ExtChoice,
    IntChoice,
    Parallel,
    SpecChoice, // pa <> pb
    Hide,
    Rename,
    If,
    While,
    Named,
    Aux,        // <<pa, a>>: pending compensation a behind running pa (internal)
};

struct StdProc {
    StdKind kind;
    CommEvent ev;            // Atomic, Prefix
    StdRef a, b;             // children
    CompRef body;            // Block
    EventSet set;            // Parallel, Hide
    RenamingRelation ren;    // Rename
    BoolExprRef cond;        // If, While
    std::string name;        // Named, Assign, ProcVar
    TerminalEvent term = TerminalEvent::Fault;  // Emit
    size_t hash = 0;
};

struct CompProc {
    CompKind kind;
    StdRef sa, sb;           // Pair fwd/comp, VarPair fwd, Aux pending
    CompRef pa, pb;          // children
    EventSet set;
    RenamingRelation ren;
    BoolExprRef cond;
    std::string name;        // VarPair variable, Named
    size_t hash = 0;
};

// Standard process constructors. Nil/Skip/Throw/Yield are shared singletons.
StdRef std_nil();
StdRef std_skip();
StdRef std_throw();
StdRef std_yield();
StdRef std_atomic(CommEvent ev);
StdRef std_prefix(CommEvent ev, StdRef p);
StdRef std_seq(StdRef p, StdRef q);
StdRef std_ext_choice(StdRef p, StdRef q);
StdRef std_int_choice(StdRef p, StdRef q);
StdRef std_parallel(EventSet sync, StdRef p, StdRef q);
StdRef std_handler(StdRef p, StdRef q);
StdRef std_hide(StdRef p, EventSet hidden);
StdRef std_rename(StdRef p, RenamingRelation ren);
StdRef std_block(CompRef body);
StdRef std_if(BoolExprRef cond, StdRef t, StdRef e);
StdRef std_while(BoolExprRef cond, StdRef body);
StdRef std_named(std::string name);
StdRef std_assign(std::string var, StdRef value);
StdRef std_proc_var(std::string var);
StdRef std_aux(StdRef first, StdRef second);
StdRef std_emit(TerminalEvent w);

// Compensable process constructors. SKIPP/THROWW/YIELDD are sugar for
// comp_pair(std_skip()/std_throw()/std_yield(), std_skip()).
CompRef comp_pair(StdRef forward, StdRef comp);
CompRef comp_var_pair(StdRef forward, std::string var);
CompRef comp_seq(CompRef pp, CompRef qq);
CompRef comp_ext_choice(CompRef pp, CompRef qq);
CompRef comp_int_choice(CompRef pp, CompRef qq);
CompRef comp_parallel(EventSet sync, CompRef pp, CompRef qq);
CompRef comp_spec_choice(CompRef pp, CompRef qq);
CompRef comp_hide(CompRef pp, EventSet hidden);
CompRef comp_rename(CompRef pp, RenamingRelation ren);
CompRef comp_if(BoolExprRef cond, CompRef t, CompRef e);
CompRef comp_while(BoolExprRef cond, CompRef body);
CompRef comp_named(std::string name);
CompRef comp_aux(CompRef rest, StdRef accumulated);

CompRef comp_skipp();
CompRef comp_throww();
CompRef comp_yieldd();

bool proc_equal(const StdRef& a, const StdRef& b);
bool proc_equal(const CompRef& a, const CompRef& b);

// Either a standard or a compensable process.
struct Term {
    StdRef sp;
    CompRef cp;

    Term() = default;
    Term(StdRef p) : sp(std::move(p)) {}
    Term(CompRef p) : cp(std::move(p)) {}

    bool is_std() const { return sp != nullptr; }
    bool valid() const { return (sp != nullptr) != (cp != nullptr); }
    size_t hash() const { return sp ? sp->hash : cp->hash * 0x9e3779b97f4a7c15ull; }
};

bool term_equal(const Term& a, const Term& b);

// Process variables occurring in VarPair, ProcVar, or Assign positions.
std::set<std::string> free_process_vars(const StdRef& p);
std::set<std::string> free_process_vars(const CompRef& pp);

// Process names referenced via Named/NamedComp nodes.
void collect_named_refs(const StdRef& p, std::set<std::string>& std_names,
                        std::set<std::string>& comp_names);
void collect_named_refs(const CompRef& pp, std::set<std::string>& std_names,
                        std::set<std::string>& comp_names);

// True if the term contains an internal-only constructor
// (AuxStd, Emit, or AuxComp); the parser never produces these.
bool contains_internal_forms(const StdRef& p);
bool contains_internal_forms(const CompRef& pp);

}  // namespace deccsp
