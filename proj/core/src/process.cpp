#include "deccsp/process.hpp"

#include <algorithm>
#include <cassert>

namespace deccsp {

static size_t mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

bool CommEvent::has_input() const {
    for (const auto& it : items)
        if (it.kind == CommItem::Kind::In) return true;
    return false;
}

std::string CommEvent::str() const {
    std::string out;
    for (size_t i = 0; i < channel.size(); ++i) {
        if (i) out += '.';
        out += channel[i];
    }
    for (const auto& it : items) {
        switch (it.kind) {
            case CommItem::Kind::Dot: {
                std::string e = expr_str(it.expr);
                bool atom = it.expr->kind == IntExpr::Kind::Lit ||
                            it.expr->kind == IntExpr::Kind::Var;
                out += '.';
                out += atom ? e : "(" + e + ")";
                break;
            }
            case CommItem::Kind::In:
                out += '?';
                out += it.var;
                break;
            case CommItem::Kind::Out: {
                std::string e = expr_str(it.expr);
                bool atom = it.expr->kind == IntExpr::Kind::Lit ||
                            it.expr->kind == IntExpr::Kind::Var;
                out += '!';
                out += atom ? e : "(" + e + ")";
                break;
            }
        }
    }
    return out;
}

CommEvent comm_plain(std::string atom) {
    CommEvent e;
    e.channel.push_back(std::move(atom));
    return e;
}

CommEvent comm_plain(EventName name) {
    CommEvent e;
    e.channel = std::move(name.parts);
    for (long long v : name.data) {
        CommItem it;
        it.kind = CommItem::Kind::Dot;
        it.expr = int_lit(v);
        e.items.push_back(std::move(it));
    }
    return e;
}

bool comm_equal(const CommEvent& a, const CommEvent& b) {
    if (a.channel != b.channel || a.items.size() != b.items.size()) return false;
    for (size_t i = 0; i < a.items.size(); ++i) {
        const auto& x = a.items[i];
        const auto& y = b.items[i];
        if (x.kind != y.kind) return false;
        if (x.kind == CommItem::Kind::In) {
            if (x.var != y.var) return false;
        } else if (!expr_equal(x.expr, y.expr)) {
            return false;
        }
    }
    return true;
}

size_t hash_value(const CommEvent& e) {
    size_t h = 0xc0117;
    for (const auto& p : e.channel) h = mix(h, std::hash<std::string>{}(p));
    for (const auto& it : e.items) {
        h = mix(h, static_cast<size_t>(it.kind) + 1);
        if (it.kind == CommItem::Kind::In)
            h = mix(h, std::hash<std::string>{}(it.var));
        else
            h = mix(h, it.expr->hash);
    }
    return h;
}

EventSet make_event_set(std::vector<EventName> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

bool set_matches(const EventSet& set, const EventName& event) {
    for (const auto& entry : set) {
        if (entry.parts != event.parts) continue;
        if (entry.data.empty() || entry.data == event.data) return true;
    }
    return false;
}

RenamingRelation make_renaming(std::vector<RenamePair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

static size_t hash_set(const EventSet& s) {
    size_t h = 0x5e7;
    for (const auto& e : s) h = mix(h, hash_value(e));
    return h;
}

static size_t hash_ren(const RenamingRelation& r) {
    size_t h = 0x4e4;
    for (const auto& p : r) h = mix(h, mix(hash_value(p.from), hash_value(p.to)));
    return h;
}

namespace {

std::shared_ptr<StdProc> make_std(StdKind kind) {
    auto p = std::make_shared<StdProc>();
    p->kind = kind;
    return p;
}

size_t finish_std(StdProc& p) {
    size_t h = mix(0x57d, static_cast<size_t>(p.kind) + 1);
    if (p.kind == StdKind::Atomic || p.kind == StdKind::Prefix) h = mix(h, hash_value(p.ev));
    if (p.a) h = mix(h, p.a->hash);
    if (p.b) h = mix(h, p.b->hash);
    if (p.body) h = mix(h, p.body->hash);
    h = mix(h, hash_set(p.set));
    h = mix(h, hash_ren(p.ren));
    if (p.cond) h = mix(h, p.cond->hash);
    if (!p.name.empty()) h = mix(h, std::hash<std::string>{}(p.name));
    if (p.kind == StdKind::Emit) h = mix(h, static_cast<size_t>(p.term) + 7);
    return h;
}

size_t finish_comp(CompProc& p) {
    size_t h = mix(0xc08b, static_cast<size_t>(p.kind) + 1);
    if (p.sa) h = mix(h, p.sa->hash);
    if (p.sb) h = mix(h, p.sb->hash);
    if (p.pa) h = mix(h, p.pa->hash);
    if (p.pb) h = mix(h, p.pb->hash);
    h = mix(h, hash_set(p.set));
    h = mix(h, hash_ren(p.ren));
    if (p.cond) h = mix(h, p.cond->hash);
    if (!p.name.empty()) h = mix(h, std::hash<std::string>{}(p.name));
    return h;
}

}  // namespace

StdRef std_nil() {
    static StdRef p = [] {
        auto n = make_std(StdKind::Nil);
        n->hash = finish_std(*n);
        return n;
    }();
    return p;
}

StdRef std_skip() {
    static StdRef p = [] {
        auto n = make_std(StdKind::Skip);
        n->hash = finish_std(*n);
        return n;
    }();
    return p;
}

StdRef std_throw() {
    static StdRef p = [] {
        auto n = make_std(StdKind::Throw);
        n->hash = finish_std(*n);
        return n;
    }();
    return p;
}

StdRef std_yield() {
    static StdRef p = [] {
        auto n = make_std(StdKind::Yield);
        n->hash = finish_std(*n);
        return n;
    }();
    return p;
}

StdRef std_atomic(CommEvent ev) {
    auto p = make_std(StdKind::Atomic);
    p->ev = std::move(ev);
    p->hash = finish_std(*p);
    return p;
}

StdRef std_prefix(CommEvent ev, StdRef next) {
    auto p = make_std(StdKind::Prefix);
    p->ev = std::move(ev);
    p->a = std::move(next);
    p->hash = finish_std(*p);
    return p;
}

static StdRef std_bin(StdKind kind, StdRef a, StdRef b) {
    auto p = make_std(kind);
    p->a = std::move(a);
    p->b = std::move(b);
    p->hash = finish_std(*p);
    return p;
}

StdRef std_seq(StdRef p, StdRef q) { return std_bin(StdKind::Seq, std::move(p), std::move(q)); }
StdRef std_ext_choice(StdRef p, StdRef q) {
    return std_bin(StdKind::ExtChoice, std::move(p), std::move(q));
}
StdRef std_int_choice(StdRef p, StdRef q) {
    return std_bin(StdKind::IntChoice, std::move(p), std::move(q));
}
StdRef std_handler(StdRef p, StdRef q) {
    return std_bin(StdKind::Handler, std::move(p), std::move(q));
}

StdRef std_parallel(EventSet sync, StdRef p, StdRef q) {
    auto n = make_std(StdKind::Parallel);
    n->set = std::move(sync);
    n->a = std::move(p);
    n->b = std::move(q);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_hide(StdRef p, EventSet hidden) {
    auto n = make_std(StdKind::Hide);
    n->a = std::move(p);
    n->set = std::move(hidden);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_rename(StdRef p, RenamingRelation ren) {
    auto n = make_std(StdKind::Rename);
    n->a = std::move(p);
    n->ren = std::move(ren);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_block(CompRef body) {
    auto n = make_std(StdKind::Block);
    n->body = std::move(body);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_if(BoolExprRef cond, StdRef t, StdRef e) {
    auto n = make_std(StdKind::If);
    n->cond = std::move(cond);
    n->a = std::move(t);
    n->b = std::move(e);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_while(BoolExprRef cond, StdRef body) {
    auto n = make_std(StdKind::While);
    n->cond = std::move(cond);
    n->a = std::move(body);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_named(std::string name) {
    auto n = make_std(StdKind::Named);
    n->name = std::move(name);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_assign(std::string var, StdRef value) {
    auto n = make_std(StdKind::Assign);
    n->name = std::move(var);
    n->a = std::move(value);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_proc_var(std::string var) {
    auto n = make_std(StdKind::ProcVar);
    n->name = std::move(var);
    n->hash = finish_std(*n);
    return n;
}

StdRef std_aux(StdRef first, StdRef second) {
    return std_bin(StdKind::AuxStd, std::move(first), std::move(second));
}

StdRef std_emit(TerminalEvent w) {
    auto n = make_std(StdKind::Emit);
    n->term = w;
    n->hash = finish_std(*n);
    return n;
}

namespace {
std::shared_ptr<CompProc> make_comp(CompKind kind) {
    auto p = std::make_shared<CompProc>();
    p->kind = kind;
    return p;
}
}  // namespace

CompRef comp_pair(StdRef forward, StdRef comp) {
    auto n = make_comp(CompKind::Pair);
    n->sa = std::move(forward);
    n->sb = std::move(comp);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_var_pair(StdRef forward, std::string var) {
    auto n = make_comp(CompKind::VarPair);
    n->sa = std::move(forward);
    n->name = std::move(var);
    n->hash = finish_comp(*n);
    return n;
}

static CompRef comp_bin(CompKind kind, CompRef a, CompRef b) {
    auto n = make_comp(kind);
    n->pa = std::move(a);
    n->pb = std::move(b);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_seq(CompRef pp, CompRef qq) {
    return comp_bin(CompKind::Seq, std::move(pp), std::move(qq));
}
CompRef comp_ext_choice(CompRef pp, CompRef qq) {
    return comp_bin(CompKind::ExtChoice, std::move(pp), std::move(qq));
}
CompRef comp_int_choice(CompRef pp, CompRef qq) {
    return comp_bin(CompKind::IntChoice, std::move(pp), std::move(qq));
}
CompRef comp_spec_choice(CompRef pp, CompRef qq) {
    return comp_bin(CompKind::SpecChoice, std::move(pp), std::move(qq));
}

CompRef comp_parallel(EventSet sync, CompRef pp, CompRef qq) {
    auto n = make_comp(CompKind::Parallel);
    n->set = std::move(sync);
    n->pa = std::move(pp);
    n->pb = std::move(qq);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_hide(CompRef pp, EventSet hidden) {
    auto n = make_comp(CompKind::Hide);
    n->pa = std::move(pp);
    n->set = std::move(hidden);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_rename(CompRef pp, RenamingRelation ren) {
    auto n = make_comp(CompKind::Rename);
    n->pa = std::move(pp);
    n->ren = std::move(ren);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_if(BoolExprRef cond, CompRef t, CompRef e) {
    auto n = make_comp(CompKind::If);
    n->cond = std::move(cond);
    n->pa = std::move(t);
    n->pb = std::move(e);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_while(BoolExprRef cond, CompRef body) {
    auto n = make_comp(CompKind::While);
    n->cond = std::move(cond);
    n->pa = std::move(body);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_named(std::string name) {
    auto n = make_comp(CompKind::Named);
    n->name = std::move(name);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_aux(CompRef rest, StdRef accumulated) {
    auto n = make_comp(CompKind::Aux);
    n->pa = std::move(rest);
    n->sa = std::move(accumulated);
    n->hash = finish_comp(*n);
    return n;
}

CompRef comp_skipp() { return comp_pair(std_skip(), std_skip()); }
CompRef comp_throww() { return comp_pair(std_throw(), std_skip()); }
CompRef comp_yieldd() { return comp_pair(std_yield(), std_skip()); }

static bool ren_equal(const RenamingRelation& a, const RenamingRelation& b) { return a == b; }

bool proc_equal(const StdRef& a, const StdRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
        case StdKind::Nil:
        case StdKind::Skip:
        case StdKind::Throw:
        case StdKind::Yield: return true;
        case StdKind::Atomic: return comm_equal(a->ev, b->ev);
        case StdKind::Prefix: return comm_equal(a->ev, b->ev) && proc_equal(a->a, b->a);
        case StdKind::Seq:
        case StdKind::ExtChoice:
        case StdKind::IntChoice:
        case StdKind::Handler:
        case StdKind::AuxStd: return proc_equal(a->a, b->a) && proc_equal(a->b, b->b);
        case StdKind::Parallel:
            return a->set == b->set && proc_equal(a->a, b->a) && proc_equal(a->b, b->b);
        case StdKind::Hide: return a->set == b->set && proc_equal(a->a, b->a);
        case StdKind::Rename: return ren_equal(a->ren, b->ren) && proc_equal(a->a, b->a);
        case StdKind::Block: return proc_equal(a->body, b->body);
        case StdKind::If:
            return expr_equal(a->cond, b->cond) && proc_equal(a->a, b->a) &&
                   proc_equal(a->b, b->b);
        case StdKind::While: return expr_equal(a->cond, b->cond) && proc_equal(a->a, b->a);
        case StdKind::Named:
        case StdKind::ProcVar: return a->name == b->name;
        case StdKind::Assign: return a->name == b->name && proc_equal(a->a, b->a);
        case StdKind::Emit: return a->term == b->term;
    }
    return false;
}

bool proc_equal(const CompRef& a, const CompRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
        case CompKind::Pair: return proc_equal(a->sa, b->sa) && proc_equal(a->sb, b->sb);
        case CompKind::VarPair: return a->name == b->name && proc_equal(a->sa, b->sa);
        case CompKind::Seq:
        case CompKind::ExtChoice:
        case CompKind::IntChoice:
        case CompKind::SpecChoice: return proc_equal(a->pa, b->pa) && proc_equal(a->pb, b->pb);
        case CompKind::Parallel:
            return a->set == b->set && proc_equal(a->pa, b->pa) && proc_equal(a->pb, b->pb);
        case CompKind::Hide: return a->set == b->set && proc_equal(a->pa, b->pa);
        case CompKind::Rename: return ren_equal(a->ren, b->ren) && proc_equal(a->pa, b->pa);
        case CompKind::If:
            return expr_equal(a->cond, b->cond) && proc_equal(a->pa, b->pa) &&
                   proc_equal(a->pb, b->pb);
        case CompKind::While: return expr_equal(a->cond, b->cond) && proc_equal(a->pa, b->pa);
        case CompKind::Named: return a->name == b->name;
        case CompKind::Aux: return proc_equal(a->pa, b->pa) && proc_equal(a->sa, b->sa);
    }
    return false;
}

bool term_equal(const Term& a, const Term& b) {
    if (a.is_std() != b.is_std()) return false;
    return a.is_std() ? proc_equal(a.sp, b.sp) : proc_equal(a.cp, b.cp);
}

namespace {

void fpv(const StdRef& p, std::set<std::string>& out);
void fpv(const CompRef& p, std::set<std::string>& out);

void fpv(const StdRef& p, std::set<std::string>& out) {
    if (!p) return;
    if (p->kind == StdKind::ProcVar || p->kind == StdKind::Assign) out.insert(p->name);
    fpv(p->a, out);
    fpv(p->b, out);
    fpv(p->body, out);
}

void fpv(const CompRef& p, std::set<std::string>& out) {
    if (!p) return;
    if (p->kind == CompKind::VarPair) out.insert(p->name);
    fpv(p->sa, out);
    fpv(p->sb, out);
    fpv(p->pa, out);
    fpv(p->pb, out);
}

}  // namespace

std::set<std::string> free_process_vars(const StdRef& p) {
    std::set<std::string> out;
    fpv(p, out);
    return out;
}

std::set<std::string> free_process_vars(const CompRef& pp) {
    std::set<std::string> out;
    fpv(pp, out);
    return out;
}

void collect_named_refs(const StdRef& p, std::set<std::string>& std_names,
                        std::set<std::string>& comp_names) {
    if (!p) return;
    if (p->kind == StdKind::Named) std_names.insert(p->name);
    collect_named_refs(p->a, std_names, comp_names);
    collect_named_refs(p->b, std_names, comp_names);
    collect_named_refs(p->body, std_names, comp_names);
}

void collect_named_refs(const CompRef& pp, std::set<std::string>& std_names,
                        std::set<std::string>& comp_names) {
    if (!pp) return;
    if (pp->kind == CompKind::Named) comp_names.insert(pp->name);
    collect_named_refs(pp->sa, std_names, comp_names);
    collect_named_refs(pp->sb, std_names, comp_names);
    collect_named_refs(pp->pa, std_names, comp_names);
    collect_named_refs(pp->pb, std_names, comp_names);
}

bool contains_internal_forms(const StdRef& p) {
    if (!p) return false;
    if (p->kind == StdKind::AuxStd || p->kind == StdKind::Emit) return true;
    return contains_internal_forms(p->a) || contains_internal_forms(p->b) ||
           contains_internal_forms(p->body);
}

bool contains_internal_forms(const CompRef& pp) {
    if (!pp) return false;
    if (pp->kind == CompKind::Aux) return true;
    return contains_internal_forms(pp->sa) || contains_internal_forms(pp->sb) ||
           contains_internal_forms(pp->pa) || contains_internal_forms(pp->pb);
}

}  // namespace deccsp
