#include "deccsp/semantics.hpp"

#include <algorithm>
#include <cstring>
#include <optional>

namespace deccsp {

long long eval_int(const IntExprRef& e, const LocalStore& sigma) {
    switch (e->kind) {
        case IntExpr::Kind::Lit: return e->lit;
        case IntExpr::Kind::Var: {
            auto it = sigma.find(e->var);
            if (it == sigma.end())
                throw SemanticsError(SemanticsError::Kind::UnboundDataVariable, e->var,
                                     "unbound data variable '" + e->var + "'");
            return it->second;
        }
        case IntExpr::Kind::Add: return eval_int(e->lhs, sigma) + eval_int(e->rhs, sigma);
        case IntExpr::Kind::Sub: return eval_int(e->lhs, sigma) - eval_int(e->rhs, sigma);
        case IntExpr::Kind::Mul: return eval_int(e->lhs, sigma) * eval_int(e->rhs, sigma);
        case IntExpr::Kind::Div: {
            long long d = eval_int(e->rhs, sigma);
            if (d == 0)
                throw SemanticsError(SemanticsError::Kind::DivisionByZero, "",
                                     "division by zero");
            return eval_int(e->lhs, sigma) / d;
        }
    }
    return 0;
}

bool eval_bool(const BoolExprRef& b, const LocalStore& sigma) {
    switch (b->kind) {
        case BoolExpr::Kind::Lit: return b->lit;
        case BoolExpr::Kind::Cmp: {
            long long l = eval_int(b->il, sigma);
            long long r = eval_int(b->ir, sigma);
            switch (b->cmp) {
                case CmpOp::Eq: return l == r;
                case CmpOp::Ne: return l != r;
                case CmpOp::Lt: return l < r;
                case CmpOp::Le: return l <= r;
                case CmpOp::Gt: return l > r;
                case CmpOp::Ge: return l >= r;
            }
            return false;
        }
        case BoolExpr::Kind::And: return eval_bool(b->bl, sigma) && eval_bool(b->br, sigma);
        case BoolExpr::Kind::Or: return eval_bool(b->bl, sigma) || eval_bool(b->br, sigma);
        case BoolExpr::Kind::Not: return !eval_bool(b->bl, sigma);
    }
    return false;
}

std::vector<Label> apply_renaming(const Label& label, const RenamingRelation& ren) {
    if (!label.is_observable()) return {label};
    std::vector<Label> out;
    for (const auto& pair : ren) {
        if (pair.from.parts != label.event.parts) continue;
        if (!pair.from.data.empty() && pair.from.data != label.event.data) continue;
        EventName renamed = pair.to;
        if (renamed.data.empty()) renamed.data = label.event.data;
        out.push_back(Label::observable(std::move(renamed)));
    }
    if (out.empty()) out.push_back(label);
    return out;
}

namespace {

// ------------------------------------------------------------------ offers
//
// A potential transition of a subterm. Channel inputs are kept symbolic
// (open positions) so that parallel composition can resolve them by
// unification against the partner; whatever stays open at the top level is
// enumerated from the channel's declared domain.

struct EventOffer {
    std::vector<std::string> parts;
    std::vector<std::optional<long long>> pos;
    std::vector<std::pair<std::string, int>> binders;  // σ variable <- position

    bool concrete() const {
        for (const auto& p : pos)
            if (!p) return false;
        return true;
    }
    EventName name() const {
        EventName n;
        n.parts = parts;
        for (const auto& p : pos) n.data.push_back(*p);
        return n;
    }
};

struct Offer {
    enum class K : uint8_t { Event, Tau, Terminal };
    K k = K::Tau;
    EventOffer ev;                                      // K::Event
    TerminalEvent term = TerminalEvent::Fault;          // K::Terminal
    Term target;
    std::vector<std::pair<std::string, long long>> sigma_sets;
    std::optional<std::pair<std::string, StdRef>> rho_set;
    const char* rule = "";
};

struct Ctx {
    const LocalStore& sigma;
    const GlobalStore& rho;
    const ModelDefinition& model;
    const EngineOptions& opts;
};

Offer tau_offer(Term target, const char* rule) {
    Offer o;
    o.k = Offer::K::Tau;
    o.target = std::move(target);
    o.rule = rule;
    return o;
}

Offer term_offer(TerminalEvent w, Term target, const char* rule) {
    Offer o;
    o.k = Offer::K::Terminal;
    o.term = w;
    o.target = std::move(target);
    o.rule = rule;
    return o;
}

Offer event_offer(EventOffer ev, Term target, const char* rule) {
    Offer o;
    o.k = Offer::K::Event;
    o.ev = std::move(ev);
    o.target = std::move(target);
    o.rule = rule;
    return o;
}

Offer rewrap(const Offer& o, Term target, const char* rule) {
    Offer out = o;
    out.target = std::move(target);
    out.rule = rule;
    return out;
}

EventOffer eval_comm(const CommEvent& c, const Ctx& cx) {
    EventOffer o;
    o.parts = c.channel;
    for (const auto& it : c.items) {
        if (it.kind == CommItem::Kind::In) {
            o.binders.emplace_back(it.var, static_cast<int>(o.pos.size()));
            o.pos.push_back(std::nullopt);
        } else {
            o.pos.push_back(eval_int(it.expr, cx.sigma));
        }
    }
    return o;
}

bool offer_in_set(const EventSet& set, const EventOffer& o) {
    for (const auto& entry : set) {
        if (entry.parts != o.parts) continue;
        if (entry.data.empty()) return true;
        if (entry.data.size() != o.pos.size()) continue;
        bool match = true;
        for (size_t i = 0; i < entry.data.size(); ++i) {
            if (!o.pos[i] || *o.pos[i] != entry.data[i]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

std::optional<EventOffer> unify(const EventOffer& l, const EventOffer& r) {
    if (l.parts != r.parts || l.pos.size() != r.pos.size()) return std::nullopt;
    EventOffer out = l;
    for (size_t i = 0; i < l.pos.size(); ++i) {
        if (l.pos[i] && r.pos[i]) {
            if (*l.pos[i] != *r.pos[i]) return std::nullopt;
        } else if (r.pos[i]) {
            out.pos[i] = r.pos[i];
        }
    }
    for (const auto& b : r.binders) out.binders.push_back(b);
    return out;
}

// Resolve any open positions against the channel's declared domain.
std::vector<EventOffer> enumerate_open(const EventOffer& o, const Ctx& cx) {
    std::vector<int> open;
    for (size_t i = 0; i < o.pos.size(); ++i)
        if (!o.pos[i]) open.push_back(static_cast<int>(i));
    if (open.empty()) return {o};

    EventName chan(o.parts, {});
    auto domain = cx.model.domain_of(chan);
    if (!domain || domain->empty())
        throw SemanticsError(SemanticsError::Kind::UnsynchronizedInputWithoutDomain, chan.str(),
                             "input on channel '" + chan.str() +
                                 "' cannot synchronise and has no declared domain");
    double count = 1;
    for (size_t i = 0; i < open.size(); ++i) {
        count *= static_cast<double>(domain->size());
        if (count > cx.opts.max_channel_enum)
            throw SemanticsError(SemanticsError::Kind::ChannelEnumerationOverflow, chan.str(),
                                 "channel enumeration for '" + chan.str() + "' exceeds cap");
    }

    std::vector<EventOffer> out;
    std::vector<size_t> idx(open.size(), 0);
    for (;;) {
        EventOffer cur = o;
        for (size_t i = 0; i < open.size(); ++i) cur.pos[open[i]] = (*domain)[idx[i]];
        out.push_back(std::move(cur));
        size_t i = open.size();
        while (i > 0) {
            if (++idx[i - 1] < domain->size()) break;
            idx[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

// Apply a concrete offer's input binders to its σ update list.
void finalize_binders(Offer& o) {
    for (const auto& [var, pos] : o.ev.binders) {
        o.sigma_sets.emplace_back(var, *o.ev.pos[pos]);
    }
    o.ev.binders.clear();
}

std::vector<Offer> step_std(const StdRef& p, const Ctx& cx);
std::vector<Offer> step_comp(const CompRef& pp, const Ctx& cx);

// Shared for Hide on both families: hidden events must become concrete τ
// steps, so open inputs are enumerated at the hiding operator.
template <typename Wrap>
void hide_offers(const std::vector<Offer>& inner, const EventSet& set, const Ctx& cx,
                 std::vector<Offer>& out, Wrap&& wrap_target, const char* pass_rule,
                 const char* hidden_rule, const char* term_rule) {
    for (const auto& o : inner) {
        switch (o.k) {
            case Offer::K::Tau:
                out.push_back(rewrap(o, wrap_target(o.target), pass_rule));
                break;
            case Offer::K::Event:
                if (offer_in_set(set, o.ev)) {
                    for (auto& c : enumerate_open(o.ev, cx)) {
                        Offer t = o;
                        t.ev = std::move(c);
                        finalize_binders(t);
                        Offer tau = tau_offer(wrap_target(o.target), hidden_rule);
                        tau.sigma_sets = std::move(t.sigma_sets);
                        tau.rho_set = t.rho_set;
                        out.push_back(std::move(tau));
                    }
                } else {
                    out.push_back(rewrap(o, wrap_target(o.target), pass_rule));
                }
                break;
            case Offer::K::Terminal:
                out.push_back(term_offer(o.term, wrap_target(o.target), term_rule));
                break;
        }
    }
}

template <typename Wrap>
void rename_offers(const std::vector<Offer>& inner, const RenamingRelation& ren,
                   std::vector<Offer>& out, Wrap&& wrap_target, const char* event_rule,
                   const char* tau_rule, const char* term_rule) {
    for (const auto& o : inner) {
        switch (o.k) {
            case Offer::K::Tau:
                out.push_back(rewrap(o, wrap_target(o.target), tau_rule));
                break;
            case Offer::K::Terminal:
                out.push_back(term_offer(o.term, wrap_target(o.target), term_rule));
                break;
            case Offer::K::Event: {
                bool renamed = false;
                for (const auto& pair : ren) {
                    if (pair.from.parts != o.ev.parts) continue;
                    if (!pair.from.data.empty()) {
                        // Data-specific entries apply to concrete events only.
                        if (!o.ev.concrete() || pair.from.data != o.ev.name().data) continue;
                    }
                    Offer r = rewrap(o, wrap_target(o.target), event_rule);
                    r.ev.parts = pair.to.parts;
                    if (!pair.to.data.empty()) {
                        r.ev.pos.clear();
                        r.ev.binders.clear();
                        for (long long v : pair.to.data) r.ev.pos.push_back(v);
                    }
                    out.push_back(std::move(r));
                    renamed = true;
                }
                if (!renamed) out.push_back(rewrap(o, wrap_target(o.target), event_rule));
                break;
            }
        }
    }
}

std::vector<Offer> step_std(const StdRef& p, const Ctx& cx) {
    std::vector<Offer> out;
    switch (p->kind) {
        case StdKind::Nil:
            break;

        case StdKind::Skip:
            out.push_back(term_offer(TerminalEvent::Done, Term(std_nil()), "skip"));
            break;

        case StdKind::Throw:
            out.push_back(term_offer(TerminalEvent::Fault, Term(std_nil()), "throw"));
            break;

        case StdKind::Yield:
            out.push_back(term_offer(TerminalEvent::Yield, Term(std_nil()), "yield"));
            out.push_back(term_offer(TerminalEvent::Done, Term(std_nil()), "yield"));
            break;

        case StdKind::Atomic: {
            EventOffer ev = eval_comm(p->ev, cx);
            out.push_back(event_offer(ev, Term(std_skip()), "atomic"));
            if (cx.opts.interruptible_atoms) {
                out.push_back(term_offer(TerminalEvent::Yield, Term(std_nil()),
                                         "atomic-interrupt-before"));
                out.push_back(event_offer(ev, Term(std_nil()), "atomic-interrupt-after"));
            }
            break;
        }

        case StdKind::Prefix:
            out.push_back(event_offer(eval_comm(p->ev, cx), Term(p->a), "prefix"));
            break;

        case StdKind::Seq:
            for (const auto& o : step_std(p->a, cx)) {
                if (o.k == Offer::K::Terminal) {
                    if (o.term == TerminalEvent::Done) {
                        out.push_back(tau_offer(Term(p->b), "seq-done"));
                    } else {
                        out.push_back(term_offer(o.term, Term(std_nil()), "seq-abort"));
                    }
                } else {
                    out.push_back(rewrap(o, Term(std_seq(o.target.sp, p->b)), "seq-step"));
                }
            }
            break;

        case StdKind::ExtChoice: {
            auto lefts = step_std(p->a, cx);
            auto rights = step_std(p->b, cx);
            for (const auto& o : lefts)
                if (o.k != Offer::K::Tau) out.push_back(rewrap(o, o.target, "extchoice-l"));
            for (const auto& o : rights)
                if (o.k != Offer::K::Tau) out.push_back(rewrap(o, o.target, "extchoice-r"));
            for (const auto& o : lefts)
                if (o.k == Offer::K::Tau)
                    out.push_back(
                        rewrap(o, Term(std_ext_choice(o.target.sp, p->b)), "extchoice-tau-l"));
            for (const auto& o : rights)
                if (o.k == Offer::K::Tau)
                    out.push_back(
                        rewrap(o, Term(std_ext_choice(p->a, o.target.sp)), "extchoice-tau-r"));
            break;
        }

        case StdKind::IntChoice:
            out.push_back(tau_offer(Term(p->a), "intchoice-l"));
            out.push_back(tau_offer(Term(p->b), "intchoice-r"));
            break;

        case StdKind::Parallel: {
            auto lefts = step_std(p->a, cx);
            auto rights = step_std(p->b, cx);
            for (const auto& o : lefts) {
                if (o.k == Offer::K::Tau ||
                    (o.k == Offer::K::Event && !offer_in_set(p->set, o.ev)))
                    out.push_back(
                        rewrap(o, Term(std_parallel(p->set, o.target.sp, p->b)), "par-l"));
            }
            for (const auto& o : rights) {
                if (o.k == Offer::K::Tau ||
                    (o.k == Offer::K::Event && !offer_in_set(p->set, o.ev)))
                    out.push_back(
                        rewrap(o, Term(std_parallel(p->set, p->a, o.target.sp)), "par-r"));
            }
            for (const auto& l : lefts) {
                if (l.k != Offer::K::Event || !offer_in_set(p->set, l.ev)) continue;
                for (const auto& r : rights) {
                    if (r.k != Offer::K::Event || !offer_in_set(p->set, r.ev)) continue;
                    if (auto u = unify(l.ev, r.ev)) {
                        Offer s = event_offer(std::move(*u),
                                              Term(std_parallel(p->set, l.target.sp,
                                                                r.target.sp)),
                                              "par-sync");
                        s.sigma_sets = l.sigma_sets;
                        for (const auto& kv : r.sigma_sets) s.sigma_sets.push_back(kv);
                        out.push_back(std::move(s));
                    }
                }
            }
            for (const auto& l : lefts) {
                if (l.k != Offer::K::Terminal) continue;
                for (const auto& r : rights) {
                    if (r.k != Offer::K::Terminal) continue;
                    out.push_back(term_offer(
                        compose_terminal(l.term, r.term),
                        Term(std_parallel(p->set, l.target.sp, r.target.sp)), "par-term"));
                }
            }
            break;
        }

        case StdKind::Handler:
            for (const auto& o : step_std(p->a, cx)) {
                if (o.k == Offer::K::Terminal) {
                    if (o.term == TerminalEvent::Fault) {
                        out.push_back(tau_offer(Term(p->b), "handler-fault"));
                    } else {
                        out.push_back(term_offer(o.term, Term(std_nil()), "handler-pass"));
                    }
                } else {
                    out.push_back(
                        rewrap(o, Term(std_handler(o.target.sp, p->b)), "handler-step"));
                }
            }
            break;

        case StdKind::Hide:
            hide_offers(step_std(p->a, cx), p->set, cx, out,
                        [&](const Term& t) { return Term(std_hide(t.sp, p->set)); },
                        "hide-pass", "hide-hidden", "hide-term");
            break;

        case StdKind::Rename:
            rename_offers(step_std(p->a, cx), p->ren, out,
                          [&](const Term& t) { return Term(std_rename(t.sp, p->ren)); },
                          "rename-event", "rename-tau", "rename-term");
            break;

        case StdKind::Block:
            for (const auto& o : step_comp(p->body, cx)) {
                if (o.k != Offer::K::Terminal) {
                    out.push_back(rewrap(o, Term(std_block(o.target.cp)), "block-step"));
                    continue;
                }
                switch (o.term) {
                    case TerminalEvent::Done:
                        out.push_back(term_offer(TerminalEvent::Done, Term(std_nil()),
                                                 "block-done"));
                        break;
                    case TerminalEvent::Fault:
                        if (cx.opts.fault_mode == FaultMode::Contain)
                            out.push_back(tau_offer(o.target, "block-fault"));
                        else
                            out.push_back(
                                term_offer(TerminalEvent::Fault, o.target, "block-fault"));
                        break;
                    case TerminalEvent::Yield:
                        if (cx.opts.fault_mode == FaultMode::Contain)
                            out.push_back(tau_offer(o.target, "block-yield"));
                        else
                            out.push_back(
                                term_offer(TerminalEvent::Yield, o.target, "block-yield"));
                        break;
                }
            }
            break;

        case StdKind::If:
            if (eval_bool(p->cond, cx.sigma))
                out.push_back(tau_offer(Term(p->a), "if-true"));
            else
                out.push_back(tau_offer(Term(p->b), "if-false"));
            break;

        case StdKind::While:
            out.push_back(tau_offer(
                Term(std_if(p->cond, std_seq(p->a, std_while(p->cond, p->a)), std_skip())),
                "while-unfold"));
            break;

        case StdKind::Named: {
            auto it = cx.model.std_defs.find(p->name);
            if (it == cx.model.std_defs.end())
                throw SemanticsError(SemanticsError::Kind::UnknownProcessName, p->name,
                                     "undefined process '" + p->name + "'");
            out.push_back(tau_offer(Term(it->second), "named"));
            break;
        }

        case StdKind::Assign: {
            Offer o = tau_offer(Term(std_skip()), "assign");
            o.rho_set = std::make_pair(p->name, p->a);
            out.push_back(std::move(o));
            break;
        }

        case StdKind::ProcVar: {
            auto it = cx.rho.find(p->name);
            if (it != cx.rho.end()) {
                out.push_back(tau_offer(Term(it->second), "retrieve"));
            } else if (cx.opts.unassigned_vars == UnassignedVarMode::DefaultSkip) {
                out.push_back(tau_offer(Term(std_skip()), "retrieve"));
            } else {
                throw SemanticsError(SemanticsError::Kind::UnboundProcessVariable, p->name,
                                     "process variable '" + p->name +
                                         "' retrieved before assignment");
            }
            break;
        }

        case StdKind::AuxStd:
            for (const auto& o : step_std(p->a, cx)) {
                if (o.k == Offer::K::Terminal) {
                    out.push_back(term_offer(o.term, Term(p->b), "aux-std-done"));
                } else {
                    out.push_back(
                        rewrap(o, Term(std_aux(o.target.sp, p->b)), "aux-std-step"));
                }
            }
            break;

        case StdKind::Emit:
            out.push_back(term_offer(p->term, Term(std_nil()), "emit"));
            break;
    }
    return out;
}

std::vector<Offer> step_comp(const CompRef& pp, const Ctx& cx) {
    std::vector<Offer> out;
    switch (pp->kind) {
        case CompKind::Pair:
            for (const auto& o : step_std(pp->sa, cx)) {
                if (o.k == Offer::K::Terminal) {
                    if (o.term == TerminalEvent::Done)
                        out.push_back(term_offer(TerminalEvent::Done, Term(pp->sb),
                                                 "pair-done"));
                    else
                        out.push_back(term_offer(o.term, Term(std_skip()), "pair-abort"));
                } else {
                    out.push_back(
                        rewrap(o, Term(comp_pair(o.target.sp, pp->sb)), "pair-step"));
                }
            }
            break;

        case CompKind::VarPair:
            for (const auto& o : step_std(pp->sa, cx)) {
                if (o.k == Offer::K::Terminal) {
                    if (o.term == TerminalEvent::Done)
                        out.push_back(term_offer(TerminalEvent::Done,
                                                 Term(std_proc_var(pp->name)), "vpair-done"));
                    else
                        out.push_back(term_offer(o.term, Term(std_skip()), "vpair-abort"));
                } else {
                    out.push_back(
                        rewrap(o, Term(comp_var_pair(o.target.sp, pp->name)), "vpair-step"));
                }
            }
            break;

        case CompKind::Seq:
            for (const auto& o : step_comp(pp->pa, cx)) {
                if (o.k == Offer::K::Terminal) {
                    if (o.term == TerminalEvent::Done)
                        out.push_back(
                            tau_offer(Term(comp_aux(pp->pb, o.target.sp)), "cseq-done"));
                    else
                        out.push_back(term_offer(o.term, o.target, "cseq-abort"));
                } else {
                    out.push_back(
                        rewrap(o, Term(comp_seq(o.target.cp, pp->pb)), "cseq-step"));
                }
            }
            break;

        case CompKind::ExtChoice: {
            auto lefts = step_comp(pp->pa, cx);
            auto rights = step_comp(pp->pb, cx);
            for (const auto& o : lefts)
                if (o.k == Offer::K::Event)
                    out.push_back(rewrap(o, o.target, "cextchoice-l"));
            for (const auto& o : rights)
                if (o.k == Offer::K::Event)
                    out.push_back(rewrap(o, o.target, "cextchoice-r"));
            for (const auto& o : lefts)
                if (o.k == Offer::K::Terminal)
                    out.push_back(term_offer(o.term, o.target, "cextchoice-term-l"));
            for (const auto& o : rights)
                if (o.k == Offer::K::Terminal)
                    out.push_back(term_offer(o.term, o.target, "cextchoice-term-r"));
            for (const auto& o : lefts)
                if (o.k == Offer::K::Tau)
                    out.push_back(rewrap(o, Term(comp_ext_choice(o.target.cp, pp->pb)),
                                         "cextchoice-tau-l"));
            for (const auto& o : rights)
                if (o.k == Offer::K::Tau)
                    out.push_back(rewrap(o, Term(comp_ext_choice(pp->pa, o.target.cp)),
                                         "cextchoice-tau-r"));
            break;
        }

        case CompKind::IntChoice:
            out.push_back(tau_offer(Term(pp->pa), "cintchoice-l"));
            out.push_back(tau_offer(Term(pp->pb), "cintchoice-r"));
            break;

        case CompKind::Parallel: {
            auto lefts = step_comp(pp->pa, cx);
            auto rights = step_comp(pp->pb, cx);
            for (const auto& o : lefts) {
                if (o.k == Offer::K::Tau ||
                    (o.k == Offer::K::Event && !offer_in_set(pp->set, o.ev)))
                    out.push_back(
                        rewrap(o, Term(comp_parallel(pp->set, o.target.cp, pp->pb)),
                               "cpar-l"));
            }
            for (const auto& o : rights) {
                if (o.k == Offer::K::Tau ||
                    (o.k == Offer::K::Event && !offer_in_set(pp->set, o.ev)))
                    out.push_back(
                        rewrap(o, Term(comp_parallel(pp->set, pp->pa, o.target.cp)),
                               "cpar-r"));
            }
            for (const auto& l : lefts) {
                if (l.k != Offer::K::Event || !offer_in_set(pp->set, l.ev)) continue;
                for (const auto& r : rights) {
                    if (r.k != Offer::K::Event || !offer_in_set(pp->set, r.ev)) continue;
                    if (auto u = unify(l.ev, r.ev)) {
                        Offer s = event_offer(std::move(*u),
                                              Term(comp_parallel(pp->set, l.target.cp,
                                                                 r.target.cp)),
                                              "cpar-sync");
                        s.sigma_sets = l.sigma_sets;
                        for (const auto& kv : r.sigma_sets) s.sigma_sets.push_back(kv);
                        out.push_back(std::move(s));
                    }
                }
            }
            for (const auto& l : lefts) {
                if (l.k != Offer::K::Terminal) continue;
                for (const auto& r : rights) {
                    if (r.k != Offer::K::Terminal) continue;
                    // Compensations of the branches run in parallel.
                    out.push_back(term_offer(
                        compose_terminal(l.term, r.term),
                        Term(std_parallel(pp->set, l.target.sp, r.target.sp)), "cpar-term"));
                }
            }
            break;
        }

        case CompKind::SpecChoice: {
            auto lefts = step_comp(pp->pa, cx);
            auto rights = step_comp(pp->pb, cx);
            for (const auto& o : lefts)
                if (o.k != Offer::K::Terminal)
                    out.push_back(
                        rewrap(o, Term(comp_spec_choice(o.target.cp, pp->pb)), "spec-l"));
            for (const auto& o : rights)
                if (o.k != Offer::K::Terminal)
                    out.push_back(
                        rewrap(o, Term(comp_spec_choice(pp->pa, o.target.cp)), "spec-r"));
            for (const auto& l : lefts) {
                if (l.k != Offer::K::Terminal) continue;
                for (const auto& r : rights) {
                    if (r.k != Offer::K::Terminal) continue;
                    StdRef lc = l.target.sp;  // left compensation
                    StdRef rc = r.target.sp;  // right compensation
                    bool ld = l.term == TerminalEvent::Done;
                    bool rd = r.term == TerminalEvent::Done;
                    if (ld && rd) {
                        out.push_back(term_offer(
                            TerminalEvent::Done,
                            Term(std_ext_choice(std_aux(rc, lc), std_aux(lc, rc))),
                            "spec-both-done"));
                    } else if (ld) {
                        out.push_back(term_offer(TerminalEvent::Done, Term(std_aux(rc, lc)),
                                                 "spec-win-l"));
                    } else if (rd) {
                        out.push_back(term_offer(TerminalEvent::Done, Term(std_aux(lc, rc)),
                                                 "spec-win-r"));
                    } else {
                        TerminalEvent w = compose_terminal(l.term, r.term);
                        out.push_back(term_offer(
                            w, Term(std_aux(std_emit(w), std_parallel({}, lc, rc))),
                            "spec-both-fail"));
                    }
                }
            }
            break;
        }

        case CompKind::Hide:
            hide_offers(step_comp(pp->pa, cx), pp->set, cx, out,
                        [&](const Term& t) {
                            // Terminal targets are the accumulated (standard)
                            // compensation and keep the hiding.
                            if (t.is_std()) return Term(std_hide(t.sp, pp->set));
                            return Term(comp_hide(t.cp, pp->set));
                        },
                        "chide-pass", "chide-hidden", "chide-term");
            break;

        case CompKind::Rename:
            rename_offers(step_comp(pp->pa, cx), pp->ren, out,
                          [&](const Term& t) {
                              if (t.is_std()) return Term(std_rename(t.sp, pp->ren));
                              return Term(comp_rename(t.cp, pp->ren));
                          },
                          "crename-event", "crename-tau", "crename-term");
            break;

        case CompKind::If:
            if (eval_bool(pp->cond, cx.sigma))
                out.push_back(tau_offer(Term(pp->pa), "cif-true"));
            else
                out.push_back(tau_offer(Term(pp->pb), "cif-false"));
            break;

        case CompKind::While:
            out.push_back(tau_offer(
                Term(comp_if(pp->cond, comp_seq(pp->pa, comp_while(pp->cond, pp->pa)),
                             comp_skipp())),
                "cwhile-unfold"));
            break;

        case CompKind::Named: {
            auto it = cx.model.comp_defs.find(pp->name);
            if (it == cx.model.comp_defs.end())
                throw SemanticsError(SemanticsError::Kind::UnknownProcessName, pp->name,
                                     "undefined process '" + pp->name + "'");
            out.push_back(tau_offer(Term(it->second), "named-comp"));
            break;
        }

        case CompKind::Aux:
            for (const auto& o : step_comp(pp->pa, cx)) {
                if (o.k == Offer::K::Terminal) {
                    out.push_back(term_offer(o.term, Term(std_seq(o.target.sp, pp->sa)),
                                             "aux-comp-term"));
                } else {
                    out.push_back(
                        rewrap(o, Term(comp_aux(o.target.cp, pp->sa)), "aux-comp-step"));
                }
            }
            break;
    }
    return out;
}

}  // namespace

bool operator==(const Transition& a, const Transition& b) {
    return a.label == b.label && std::strcmp(a.rule, b.rule) == 0 && a.target == b.target;
}

std::vector<Transition> step(const Configuration& config, const ModelDefinition& model,
                             const EngineOptions& opts) {
    Ctx cx{config.sigma, config.rho, model, opts};
    std::vector<Offer> offers =
        config.proc.is_std() ? step_std(config.proc.sp, cx) : step_comp(config.proc.cp, cx);

    std::vector<Transition> out;
    auto emit = [&](const Offer& o, Label label) {
        Transition t;
        t.label = std::move(label);
        t.rule = o.rule;
        t.target.proc = o.target;
        t.target.sigma = config.sigma;
        for (const auto& [var, val] : o.sigma_sets) t.target.sigma[var] = val;
        t.target.rho = config.rho;
        if (o.rho_set) t.target.rho[o.rho_set->first] = o.rho_set->second;
        for (const auto& existing : out)
            if (existing == t) return;
        out.push_back(std::move(t));
    };

    for (const auto& o : offers) {
        switch (o.k) {
            case Offer::K::Tau:
                emit(o, Label::tau());
                break;
            case Offer::K::Terminal:
                emit(o, Label::terminal(o.term));
                break;
            case Offer::K::Event:
                for (auto& c : enumerate_open(o.ev, cx)) {
                    Offer r = o;
                    r.ev = c;
                    finalize_binders(r);
                    emit(r, Label::observable(r.ev.name()));
                }
                break;
        }
    }
    return out;
}

const std::vector<std::string>& all_rule_names() {
    static const std::vector<std::string> names = {
        // standard cCSP core
        "skip", "throw", "yield", "atomic",
        "extchoice-l", "extchoice-r", "extchoice-tau-l", "extchoice-tau-r",
        "seq-step", "seq-done", "seq-abort",
        "handler-step", "handler-fault", "handler-pass",
        "par-l", "par-r", "par-sync", "par-term",
        "block-step", "block-fault", "block-done", "block-yield",
        // EcCSP standard additions
        "atomic-interrupt-before", "atomic-interrupt-after",
        "intchoice-l", "intchoice-r",
        "hide-pass", "hide-hidden", "hide-term",
        "rename-event", "rename-tau", "rename-term",
        // DEcCSP standard additions
        "if-true", "if-false", "while-unfold",
        "named", "assign", "retrieve", "prefix",
        // internal standard forms
        "aux-std-step", "aux-std-done", "emit",
        // compensable cCSP core
        "pair-step", "pair-done", "pair-abort",
        "cextchoice-l", "cextchoice-r", "cextchoice-term-l", "cextchoice-term-r",
        "cextchoice-tau-l", "cextchoice-tau-r",
        "cseq-step", "cseq-done", "cseq-abort",
        "aux-comp-step", "aux-comp-term",
        "cpar-l", "cpar-r", "cpar-sync", "cpar-term",
        // EcCSP compensable additions
        "cintchoice-l", "cintchoice-r",
        "chide-pass", "chide-hidden", "chide-term",
        "crename-event", "crename-tau", "crename-term",
        "spec-l", "spec-r", "spec-both-fail", "spec-win-l", "spec-win-r", "spec-both-done",
        // DEcCSP compensable additions
        "vpair-step", "vpair-done", "vpair-abort",
        "cif-true", "cif-false", "cwhile-unfold", "named-comp",
    };
    return names;
}

}  // namespace deccsp
