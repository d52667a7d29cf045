#include "deccsp/print.hpp"

#include <sstream>

namespace deccsp {

// Precedence levels, loosest to tightest. A child printed at a looser
// level than its parent's slot gets parenthesised.
enum Prec {
    PREC_PAR = 0,     // ||
    PREC_CHOICE = 1,  // [] |~| <> [>
    PREC_SEQ = 2,     // ;
    PREC_PAIR = 3,    // /
    PREC_PREFIX = 4,  // ->
    PREC_POST = 5,    // \A [[R]]
    PREC_ATOM = 6,
};

namespace {

std::string set_str(const EventSet& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += s[i].str();
    }
    return out + "}";
}

std::string ren_str(const RenamingRelation& r) {
    std::string out = "[[";
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) out += ", ";
        out += r[i].from.str() + " <- " + r[i].to.str();
    }
    return out + "]]";
}

std::string pstd(const StdRef& p, int want);
std::string pcomp(const CompRef& pp, int want);

std::string wrap(std::string s, int have, int want) {
    if (have < want) return "(" + std::move(s) + ")";
    return s;
}

std::string pstd(const StdRef& p, int want) {
    switch (p->kind) {
        case StdKind::Nil: return "STOP";
        case StdKind::Skip: return "SKIP";
        case StdKind::Throw: return "THROW";
        case StdKind::Yield: return "YIELD";
        case StdKind::Atomic: return p->ev.str();
        case StdKind::Prefix:
            return wrap(p->ev.str() + " -> " + pstd(p->a, PREC_PREFIX), PREC_PREFIX, want);
        case StdKind::Seq:
            return wrap(pstd(p->a, PREC_SEQ + 1) + " ; " + pstd(p->b, PREC_SEQ), PREC_SEQ, want);
        case StdKind::ExtChoice:
            return wrap(pstd(p->a, PREC_CHOICE + 1) + " [] " + pstd(p->b, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case StdKind::IntChoice:
            return wrap(pstd(p->a, PREC_CHOICE + 1) + " |~| " + pstd(p->b, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case StdKind::Handler:
            return wrap(pstd(p->a, PREC_CHOICE + 1) + " [> " + pstd(p->b, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case StdKind::Parallel: {
            std::string op = p->set.empty() ? " || " : " ||" + set_str(p->set) + " ";
            return wrap(pstd(p->a, PREC_PAR + 1) + op + pstd(p->b, PREC_PAR), PREC_PAR, want);
        }
        case StdKind::Hide:
            return wrap(pstd(p->a, PREC_POST) + " \\ " + set_str(p->set), PREC_POST, want);
        case StdKind::Rename:
            return wrap(pstd(p->a, PREC_POST) + " " + ren_str(p->ren), PREC_POST, want);
        case StdKind::Block: return "[ " + pcomp(p->body, 0) + " ]";
        case StdKind::If:
            return wrap("If " + expr_str(p->cond) + " Then " + pstd(p->a, PREC_PREFIX) +
                            " Else " + pstd(p->b, PREC_PREFIX),
                        PREC_PREFIX, want);
        case StdKind::While:
            return wrap("While " + expr_str(p->cond) + " Do " + pstd(p->a, PREC_PREFIX),
                        PREC_PREFIX, want);
        case StdKind::Named: return p->name;
        case StdKind::ProcVar: return p->name;
        case StdKind::Assign:
            return wrap(p->name + " := " + pstd(p->a, PREC_PREFIX), PREC_PREFIX, want);
        case StdKind::AuxStd: return "<" + pstd(p->a, 0) + ", " + pstd(p->b, 0) + ">";
        case StdKind::Emit: return std::string("emit(") + terminal_symbol(p->term) + ")";
    }
    return "?";
}

std::string pcomp(const CompRef& pp, int want) {
    switch (pp->kind) {
        case CompKind::Pair:
            if (pp->sa->kind == StdKind::Skip && pp->sb->kind == StdKind::Skip) return "SKIPP";
            if (pp->sa->kind == StdKind::Throw && pp->sb->kind == StdKind::Skip) return "THROWW";
            if (pp->sa->kind == StdKind::Yield && pp->sb->kind == StdKind::Skip) return "YIELDD";
            return wrap(pstd(pp->sa, PREC_PAIR + 1) + " / " + pstd(pp->sb, PREC_PAIR + 1),
                        PREC_PAIR, want);
        case CompKind::VarPair:
            return wrap(pstd(pp->sa, PREC_PAIR + 1) + " / " + pp->name, PREC_PAIR, want);
        case CompKind::Seq:
            return wrap(pcomp(pp->pa, PREC_SEQ + 1) + " ; " + pcomp(pp->pb, PREC_SEQ), PREC_SEQ,
                        want);
        case CompKind::ExtChoice:
            return wrap(pcomp(pp->pa, PREC_CHOICE + 1) + " [] " + pcomp(pp->pb, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case CompKind::IntChoice:
            return wrap(pcomp(pp->pa, PREC_CHOICE + 1) + " |~| " + pcomp(pp->pb, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case CompKind::SpecChoice:
            return wrap(pcomp(pp->pa, PREC_CHOICE + 1) + " <> " + pcomp(pp->pb, PREC_CHOICE + 1),
                        PREC_CHOICE, want);
        case CompKind::Parallel: {
            std::string op = pp->set.empty() ? " || " : " ||" + set_str(pp->set) + " ";
            return wrap(pcomp(pp->pa, PREC_PAR + 1) + op + pcomp(pp->pb, PREC_PAR), PREC_PAR,
                        want);
        }
        case CompKind::Hide:
            return wrap(pcomp(pp->pa, PREC_POST) + " \\ " + set_str(pp->set), PREC_POST, want);
        case CompKind::Rename:
            return wrap(pcomp(pp->pa, PREC_POST) + " " + ren_str(pp->ren), PREC_POST, want);
        case CompKind::If:
            return wrap("If " + expr_str(pp->cond) + " Then " + pcomp(pp->pa, PREC_PREFIX) +
                            " Else " + pcomp(pp->pb, PREC_PREFIX),
                        PREC_PREFIX, want);
        case CompKind::While:
            return wrap("While " + expr_str(pp->cond) + " Do " + pcomp(pp->pa, PREC_PREFIX),
                        PREC_PREFIX, want);
        case CompKind::Named: return pp->name;
        case CompKind::Aux: return "<<" + pcomp(pp->pa, 0) + ", " + pstd(pp->sa, 0) + ">>";
    }
    return "?";
}

}  // namespace

std::string print_proc(const StdRef& p) { return pstd(p, 0); }
std::string print_proc(const CompRef& pp) { return pcomp(pp, 0); }

std::string print_term(const Term& t) {
    return t.is_std() ? print_proc(t.sp) : print_proc(t.cp);
}

std::string print_sigma(const LocalStore& sigma) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : sigma) {
        if (!first) out += ", ";
        first = false;
        out += k + "=" + std::to_string(v);
    }
    return out + "}";
}

std::string print_rho(const GlobalStore& rho) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : rho) {
        if (!first) out += ", ";
        first = false;
        out += k + "=" + print_proc(v);
    }
    return out + "}";
}

std::string print_config(const Configuration& c) {
    return print_term(c.proc) + " | " + print_sigma(c.sigma) + " | " + print_rho(c.rho);
}

std::string print_model(const ModelDefinition& model) {
    std::ostringstream out;
    if (model.options.fault_mode == FaultMode::Contain) out << "option mode = contain\n";
    if (model.options.interruptible_atoms) out << "option interruptible_atoms = on\n";
    if (model.options.unassigned_vars == UnassignedVarMode::DefaultSkip)
        out << "option unassigned_vars = skip\n";
    if (model.options.max_channel_enum != 1024)
        out << "option max_channel_enum = " << model.options.max_channel_enum << "\n";
    if (model.default_depth != 64) out << "option depth = " << model.default_depth << "\n";
    if (model.default_max_states != 100000)
        out << "option max_states = " << model.default_max_states << "\n";
    for (const auto& [name, dom] : model.domains) {
        out << "domain " << name.str() << " = {";
        for (size_t i = 0; i < dom.size(); ++i) out << (i ? ", " : "") << dom[i];
        out << "}\n";
    }
    for (const auto& [name, set] : model.syncset_aliases) {
        out << "syncset " << name << " = " << set_str(set) << "\n";
    }
    for (const auto& [name, p] : model.std_defs) {
        out << name << " = " << print_proc(p) << "\n";
    }
    for (const auto& [name, pp] : model.comp_defs) {
        out << name << " = " << print_proc(pp) << "\n";
    }
    if (!model.initial_name.empty()) {
        out << "init " << model.initial_name;
        if (!model.initial_sigma.empty()) {
            out << " with ";
            bool first = true;
            for (const auto& [k, v] : model.initial_sigma) {
                if (!first) out << ", ";
                first = false;
                out << k << " = " << v;
            }
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace deccsp
