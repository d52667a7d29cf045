#include "deccsp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "deccsp/print.hpp"
#include "deccsp/semantics.hpp"

namespace deccsp {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok {
    End, Ident, Int,
    Arrow, Semi, ExtC, IntC, SpecC, Handler, Par, Slash, Backslash,
    LBrack, RBrack, LRen, RRen, LBrace, RBrace, LParen, RParen,
    Comma, Dot, DotDot, Quest, Bang, Assign, Colon,
    Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, MapsFrom,
};

struct Token {
    Tok t;
    std::string text;
    long long num = 0;
    int line = 1, col = 1;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

    char peek(size_t off = 0) const { return pos + off < src.size() ? src[pos + off] : '\0'; }

    void advance() {
        if (pos < src.size()) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '-' && peek(1) == '-') {
                while (peek() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        skip_ws();
        Token tok;
        tok.line = line;
        tok.col = col;
        char c = peek();
        if (!c) {
            tok.t = Tok::End;
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            tok.t = Tok::Int;
            tok.num = std::stoll(digits);
            tok.text = digits;
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                id += peek();
                advance();
            }
            tok.t = Tok::Ident;
            tok.text = std::move(id);
            return tok;
        }
        auto two = [&](char a, char b) { return c == a && peek(1) == b; };
        if (two('-', '>')) { advance(); advance(); tok.t = Tok::Arrow; return tok; }
        if (two(':', '=')) { advance(); advance(); tok.t = Tok::Assign; return tok; }
        if (two('|', '~') && peek(2) == '|') { advance(); advance(); advance(); tok.t = Tok::IntC; return tok; }
        if (two('|', '|')) { advance(); advance(); tok.t = Tok::Par; return tok; }
        if (two('[', ']')) { advance(); advance(); tok.t = Tok::ExtC; return tok; }
        if (two('[', '>')) { advance(); advance(); tok.t = Tok::Handler; return tok; }
        if (two('[', '[')) { advance(); advance(); tok.t = Tok::LRen; return tok; }
        if (two(']', ']')) { advance(); advance(); tok.t = Tok::RRen; return tok; }
        if (two('<', '>')) { advance(); advance(); tok.t = Tok::SpecC; return tok; }
        if (two('<', '-')) { advance(); advance(); tok.t = Tok::MapsFrom; return tok; }
        if (two('<', '=')) { advance(); advance(); tok.t = Tok::Le; return tok; }
        if (two('>', '=')) { advance(); advance(); tok.t = Tok::Ge; return tok; }
        if (two('!', '=')) { advance(); advance(); tok.t = Tok::Ne; return tok; }
        if (two('.', '.')) { advance(); advance(); tok.t = Tok::DotDot; return tok; }
        advance();
        switch (c) {
            case ';': tok.t = Tok::Semi; return tok;
            case '/': tok.t = Tok::Slash; return tok;
            case '\\': tok.t = Tok::Backslash; return tok;
            case '[': tok.t = Tok::LBrack; return tok;
            case ']': tok.t = Tok::RBrack; return tok;
            case '{': tok.t = Tok::LBrace; return tok;
            case '}': tok.t = Tok::RBrace; return tok;
            case '(': tok.t = Tok::LParen; return tok;
            case ')': tok.t = Tok::RParen; return tok;
            case ',': tok.t = Tok::Comma; return tok;
            case '.': tok.t = Tok::Dot; return tok;
            case '?': tok.t = Tok::Quest; return tok;
            case '!': tok.t = Tok::Bang; return tok;
            case ':': tok.t = Tok::Colon; return tok;
            case '=': tok.t = Tok::Eq; return tok;
            case '<': tok.t = Tok::Lt; return tok;
            case '>': tok.t = Tok::Gt; return tok;
            case '+': tok.t = Tok::Plus; return tok;
            case '-': tok.t = Tok::Minus; return tok;
            case '*': tok.t = Tok::Star; return tok;
            default: fail(std::string("unexpected character '") + c + "'");
        }
    }
};

const std::set<std::string> kKeywords = {
    "If", "Then", "Else", "While", "Do", "SKIP", "THROW", "YIELD", "STOP",
    "SKIPP", "THROWW", "YIELDD", "mu", "par", "true", "false", "and", "or",
    "not", "option", "domain", "syncset", "init", "with",
};

bool procvar_shaped(const std::string& id) {
    if (id.empty() || !std::isupper(static_cast<unsigned char>(id[0]))) return false;
    for (size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

// ------------------------------------------------------- surface syntax tree

struct SNode;
using SP = std::shared_ptr<SNode>;

struct SNode {
    enum class K {
        Nil, Skip, Throw, Yield, Skipp, Throww, Yieldd,
        Event, Prefix,
        Seq, Ext, Int, Spec, Handler, Pair,
        Par, IndexedPar,
        Hide, Rename, Block,
        If, While,
        Ident, Assign, Mu,
    } k;
    CommEvent ev;
    SP a, b;
    std::vector<EventName> set;
    std::vector<std::string> set_aliases;
    RenamingRelation ren;
    BoolExprRef cond;
    IntExprRef lo, hi;
    std::string name;
    int line = 0, col = 0;
};

SP mknode(SNode::K k, int line, int col) {
    auto n = std::make_shared<SNode>();
    n->k = k;
    n->line = line;
    n->col = col;
    return n;
}

// ---------------------------------------------------------------- parser

struct Parser {
    Lexer lex;
    Token cur;

    explicit Parser(const std::string& src) : lex(src) { cur = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur.line, cur.col, msg);
    }

    void bump() { cur = lex.next(); }

    bool at(Tok t) const { return cur.t == t; }

    bool at_kw(const char* kw) const { return cur.t == Tok::Ident && cur.text == kw; }

    void expect(Tok t, const char* what) {
        if (!at(t)) fail(std::string("expected ") + what);
        bump();
    }

    void expect_kw(const char* kw) {
        if (!at_kw(kw)) fail(std::string("expected '") + kw + "'");
        bump();
    }

    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) fail(std::string("expected ") + what);
        if (kKeywords.count(cur.text)) fail("'" + cur.text + "' is a reserved word");
        std::string id = cur.text;
        bump();
        return id;
    }

    // --- expressions ---

    IntExprRef int_factor() {
        if (at(Tok::Int)) {
            long long v = cur.num;
            bump();
            return int_lit(v);
        }
        if (at(Tok::Minus)) {
            bump();
            return int_bin(IntExpr::Kind::Sub, int_lit(0), int_factor());
        }
        if (at(Tok::LParen)) {
            bump();
            auto e = int_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at(Tok::Ident) && !kKeywords.count(cur.text)) {
            std::string id = cur.text;
            bump();
            return int_var(id);
        }
        fail("expected integer expression");
    }

    IntExprRef int_term() {
        auto e = int_factor();
        while (at(Tok::Star) || at(Tok::Slash)) {
            auto op = at(Tok::Star) ? IntExpr::Kind::Mul : IntExpr::Kind::Div;
            bump();
            e = int_bin(op, e, int_factor());
        }
        return e;
    }

    IntExprRef int_expr() {
        auto e = int_term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            auto op = at(Tok::Plus) ? IntExpr::Kind::Add : IntExpr::Kind::Sub;
            bump();
            e = int_bin(op, e, int_term());
        }
        return e;
    }

    std::optional<CmpOp> peek_cmp() {
        switch (cur.t) {
            case Tok::Eq: return CmpOp::Eq;
            case Tok::Ne: return CmpOp::Ne;
            case Tok::Lt: return CmpOp::Lt;
            case Tok::Le: return CmpOp::Le;
            case Tok::Gt: return CmpOp::Gt;
            case Tok::Ge: return CmpOp::Ge;
            default: return std::nullopt;
        }
    }

    BoolExprRef bool_factor() {
        if (at_kw("not")) {
            bump();
            return bool_not(bool_factor());
        }
        if (at_kw("true")) {
            bump();
            return bool_lit(true);
        }
        if (at_kw("false")) {
            bump();
            return bool_lit(false);
        }
        if (at(Tok::LParen)) {
            // Either a parenthesised boolean or a parenthesised integer
            // followed by a comparison; try the comparison reading first.
            size_t sp = lex.pos;
            int sl = lex.line, sc = lex.col;
            Token save_cur = cur;
            try {
                auto l = int_expr();
                auto op = peek_cmp();
                if (!op) throw ParseError(cur.line, cur.col, "");
                bump();
                auto r = int_expr();
                return bool_cmp(*op, l, r);
            } catch (const ParseError&) {
                lex.pos = sp;
                lex.line = sl;
                lex.col = sc;
                cur = save_cur;
            }
            bump();
            auto e = bool_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        auto l = int_expr();
        auto op = peek_cmp();
        if (!op) fail("expected comparison operator");
        bump();
        auto r = int_expr();
        return bool_cmp(*op, l, r);
    }

    BoolExprRef bool_term() {
        auto e = bool_factor();
        while (at_kw("and")) {
            bump();
            e = bool_and(e, bool_factor());
        }
        return e;
    }

    BoolExprRef bool_expr() {
        auto e = bool_term();
        while (at_kw("or")) {
            bump();
            e = bool_or(e, bool_term());
        }
        return e;
    }

    // --- events and sets ---

    IntExprRef suffix_expr() {
        if (at(Tok::Int)) {
            long long v = cur.num;
            bump();
            return int_lit(v);
        }
        if (at(Tok::LParen)) {
            bump();
            auto e = int_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at(Tok::Ident) && !kKeywords.count(cur.text)) {
            std::string id = cur.text;
            bump();
            return int_var(id);
        }
        fail("expected data value, variable, or parenthesised expression");
    }

    CommEvent event_suffixes(std::string base) {
        CommEvent ev;
        ev.channel.push_back(std::move(base));
        for (;;) {
            if (at(Tok::Dot)) {
                bump();
                CommItem it;
                it.kind = CommItem::Kind::Dot;
                it.expr = suffix_expr();
                ev.items.push_back(std::move(it));
            } else if (at(Tok::Quest)) {
                bump();
                CommItem it;
                it.kind = CommItem::Kind::In;
                it.var = expect_ident("input variable");
                ev.items.push_back(std::move(it));
            } else if (at(Tok::Bang)) {
                bump();
                CommItem it;
                it.kind = CommItem::Kind::Out;
                it.expr = suffix_expr();
                ev.items.push_back(std::move(it));
            } else {
                break;
            }
        }
        return ev;
    }

    // Set entries: dotted atoms with optional literal data components.
    EventName set_entry() {
        EventName name;
        name.parts.push_back(expect_ident("event name"));
        while (at(Tok::Dot)) {
            bump();
            if (at(Tok::Int)) {
                name.data.push_back(cur.num);
                bump();
            } else if (name.data.empty() && at(Tok::Ident) && !kKeywords.count(cur.text)) {
                name.parts.push_back(cur.text);
                bump();
            } else {
                fail("expected atom or integer literal in event name");
            }
        }
        return name;
    }

    // {entry, ...}; capitalised bare entries may be syncset aliases.
    void parse_set(std::vector<EventName>& names, std::vector<std::string>* aliases) {
        expect(Tok::LBrace, "'{'");
        if (!at(Tok::RBrace)) {
            for (;;) {
                EventName e = set_entry();
                if (aliases && e.parts.size() == 1 && e.data.empty() &&
                    std::isupper(static_cast<unsigned char>(e.parts[0][0]))) {
                    aliases->push_back(e.parts[0]);
                } else {
                    names.push_back(std::move(e));
                }
                if (!at(Tok::Comma)) break;
                bump();
            }
        }
        expect(Tok::RBrace, "'}'");
    }

    // --- processes ---

    SP process() { return par_expr(); }

    SP par_expr() {
        SP left = choice_expr();
        if (at(Tok::Par)) {
            int ln = cur.line, cl = cur.col;
            bump();
            auto n = mknode(SNode::K::Par, ln, cl);
            if (at(Tok::LBrace)) parse_set(n->set, &n->set_aliases);
            n->a = left;
            n->b = par_expr();
            return n;
        }
        return left;
    }

    SP choice_expr() {
        SP left = seq_expr();
        SNode::K k;
        if (at(Tok::ExtC)) k = SNode::K::Ext;
        else if (at(Tok::IntC)) k = SNode::K::Int;
        else if (at(Tok::SpecC)) k = SNode::K::Spec;
        else if (at(Tok::Handler)) k = SNode::K::Handler;
        else return left;
        int ln = cur.line, cl = cur.col;
        bump();
        auto n = mknode(k, ln, cl);
        n->a = left;
        n->b = choice_expr();
        return n;
    }

    SP seq_expr() {
        SP left = pair_expr();
        if (at(Tok::Semi)) {
            int ln = cur.line, cl = cur.col;
            bump();
            auto n = mknode(SNode::K::Seq, ln, cl);
            n->a = left;
            n->b = seq_expr();
            return n;
        }
        return left;
    }

    SP pair_expr() {
        SP left = prefix_expr();
        if (at(Tok::Slash)) {
            int ln = cur.line, cl = cur.col;
            bump();
            auto n = mknode(SNode::K::Pair, ln, cl);
            n->a = left;
            n->b = prefix_expr();
            return n;
        }
        return left;
    }

    SP prefix_expr() {
        int ln = cur.line, cl = cur.col;
        if (at_kw("If")) {
            bump();
            auto n = mknode(SNode::K::If, ln, cl);
            n->cond = bool_expr();
            expect_kw("Then");
            n->a = prefix_expr();
            expect_kw("Else");
            n->b = prefix_expr();
            return n;
        }
        if (at_kw("While")) {
            bump();
            auto n = mknode(SNode::K::While, ln, cl);
            n->cond = bool_expr();
            expect_kw("Do");
            n->a = prefix_expr();
            return n;
        }
        if (at_kw("mu")) {
            bump();
            auto n = mknode(SNode::K::Mu, ln, cl);
            n->name = expect_ident("recursion binder");
            expect(Tok::Dot, "'.'");
            n->a = prefix_expr();
            return n;
        }
        if (at_kw("par")) {
            bump();
            auto n = mknode(SNode::K::IndexedPar, ln, cl);
            n->name = expect_ident("index variable");
            expect(Tok::Eq, "'='");
            n->lo = int_expr();
            expect(Tok::DotDot, "'..'");
            n->hi = int_expr();
            expect(Tok::Colon, "':'");
            n->a = prefix_expr();
            return n;
        }
        return postfix_expr();
    }

    SP postfix_expr() {
        SP p = primary();
        for (;;) {
            if (at(Tok::Backslash)) {
                int ln = cur.line, cl = cur.col;
                bump();
                auto n = mknode(SNode::K::Hide, ln, cl);
                parse_set(n->set, &n->set_aliases);
                n->a = p;
                p = n;
            } else if (at(Tok::LRen)) {
                int ln = cur.line, cl = cur.col;
                bump();
                auto n = mknode(SNode::K::Rename, ln, cl);
                std::vector<RenamePair> pairs;
                for (;;) {
                    RenamePair rp;
                    rp.from = set_entry();
                    expect(Tok::MapsFrom, "'<-'");
                    rp.to = set_entry();
                    pairs.push_back(std::move(rp));
                    if (!at(Tok::Comma)) break;
                    bump();
                }
                expect(Tok::RRen, "']]'");
                n->ren = make_renaming(std::move(pairs));
                n->a = p;
                p = n;
            } else {
                break;
            }
        }
        return p;
    }

    SP primary() {
        int ln = cur.line, cl = cur.col;
        if (at(Tok::LParen)) {
            bump();
            SP p = process();
            expect(Tok::RParen, "')'");
            return p;
        }
        if (at(Tok::LBrack)) {
            bump();
            auto n = mknode(SNode::K::Block, ln, cl);
            n->a = process();
            expect(Tok::RBrack, "']'");
            return n;
        }
        if (!at(Tok::Ident)) fail("expected a process");
        const std::string id = cur.text;
        if (id == "SKIP") { bump(); return mknode(SNode::K::Skip, ln, cl); }
        if (id == "STOP") { bump(); return mknode(SNode::K::Nil, ln, cl); }
        if (id == "THROW") { bump(); return mknode(SNode::K::Throw, ln, cl); }
        if (id == "YIELD") { bump(); return mknode(SNode::K::Yield, ln, cl); }
        if (id == "SKIPP") { bump(); return mknode(SNode::K::Skipp, ln, cl); }
        if (id == "THROWW") { bump(); return mknode(SNode::K::Throww, ln, cl); }
        if (id == "YIELDD") { bump(); return mknode(SNode::K::Yieldd, ln, cl); }
        if (kKeywords.count(id)) fail("'" + id + "' is a reserved word");
        bump();
        if (at(Tok::Assign)) {
            bump();
            if (!procvar_shaped(id))
                throw ParseError(ln, cl, "assignment target '" + id +
                                             "' is not a process variable (one uppercase "
                                             "letter, optional digits)");
            auto n = mknode(SNode::K::Assign, ln, cl);
            n->name = id;
            n->a = prefix_expr();
            return n;
        }
        CommEvent ev = event_suffixes(id);
        if (at(Tok::Arrow)) {
            bump();
            auto n = mknode(SNode::K::Prefix, ln, cl);
            n->ev = std::move(ev);
            n->a = prefix_expr();
            return n;
        }
        if (ev.plain()) {
            auto n = mknode(SNode::K::Ident, ln, cl);
            n->name = id;
            return n;
        }
        auto n = mknode(SNode::K::Event, ln, cl);
        n->ev = std::move(ev);
        return n;
    }
};

// ------------------------------------------------------------ classification

enum class Cls { Unknown, Std, Comp };

Cls join_cls(Cls a, Cls b, const SP& where) {
    if (a == Cls::Unknown) return b;
    if (b == Cls::Unknown) return a;
    if (a != b)
        throw ParseError(where->line, where->col,
                         "cannot mix standard and compensable operands in one operator");
    return a;
}

struct Analyzer {
    std::map<std::string, SP> raw_defs;          // surface bodies by name
    std::map<std::string, Cls> def_cls;
    const ModelDefinition* base = nullptr;       // pre-existing defs (parse_term)

    bool is_defined(const std::string& name) const {
        return raw_defs.count(name) || (base && base->has_def(name));
    }

    Cls classify(const SP& n) {
        switch (n->k) {
            case SNode::K::Nil:
            case SNode::K::Skip:
            case SNode::K::Throw:
            case SNode::K::Yield:
            case SNode::K::Event:
            case SNode::K::Prefix:
            case SNode::K::Block:
            case SNode::K::Assign: return Cls::Std;
            case SNode::K::Skipp:
            case SNode::K::Throww:
            case SNode::K::Yieldd:
            case SNode::K::Pair:
            case SNode::K::Spec: return Cls::Comp;
            case SNode::K::Handler: return Cls::Std;  // interrupt handler is standard-only
            case SNode::K::Seq:
            case SNode::K::Ext:
            case SNode::K::Int:
            case SNode::K::Par:
            case SNode::K::If:
                return join_cls(classify(n->a), classify(n->b), n);
            case SNode::K::While:
            case SNode::K::Hide:
            case SNode::K::Rename:
            case SNode::K::IndexedPar:
            case SNode::K::Mu: return classify(n->a);
            case SNode::K::Ident: {
                if (auto it = def_cls.find(n->name); it != def_cls.end()) return it->second;
                if (base) {
                    if (base->std_defs.count(n->name)) return Cls::Std;
                    if (base->comp_defs.count(n->name)) return Cls::Comp;
                }
                return Cls::Std;  // process variable or event
            }
        }
        return Cls::Std;
    }

    void resolve_classes() {
        for (const auto& [name, _] : raw_defs) def_cls[name] = Cls::Unknown;
        // Monotone fixpoint: compensable-ness spreads from syntactic markers.
        for (bool changed = true; changed;) {
            changed = false;
            for (auto& [name, body] : raw_defs) {
                Cls c = classify(body);
                if (c != Cls::Unknown && def_cls[name] != c) {
                    if (def_cls[name] == Cls::Comp && c == Cls::Std)
                        throw ParseError(body->line, body->col,
                                         "definition '" + name + "' is both standard and "
                                         "compensable");
                    def_cls[name] = c;
                    changed = true;
                }
            }
        }
        for (auto& [name, c] : def_cls)
            if (c == Cls::Unknown) c = Cls::Std;
    }
};

// ----------------------------------------------------------------- lowering

struct Lowerer {
    Analyzer& an;
    ModelDefinition& model;
    int mu_counter = 0;

    EventSet resolve_set(const SP& n) {
        std::vector<EventName> names = n->set;
        for (const auto& alias : n->set_aliases) {
            auto it = model.syncset_aliases.find(alias);
            if (it == model.syncset_aliases.end()) {
                // Not an alias after all: a capitalised plain event name.
                names.push_back(EventName(alias));
                continue;
            }
            for (const auto& e : it->second) names.push_back(e);
        }
        return make_event_set(std::move(names));
    }

    Cls cls_of(const SP& n) { return an.classify(n); }

    [[noreturn]] static void fail(const SP& n, const std::string& msg) {
        throw ParseError(n->line, n->col, msg);
    }

    struct BinderScope {
        Analyzer& an;
        std::string name;
        std::optional<SP> saved_def;
        std::optional<Cls> saved_cls;

        BinderScope(Analyzer& an_, const std::string& binder, const SP& target, Cls cls)
            : an(an_), name(binder) {
            if (auto it = an.raw_defs.find(name); it != an.raw_defs.end())
                saved_def = it->second;
            if (auto it = an.def_cls.find(name); it != an.def_cls.end())
                saved_cls = it->second;
            an.raw_defs[name] = target;
            an.def_cls[name] = cls;
        }
        ~BinderScope() {
            if (saved_def) an.raw_defs[name] = *saved_def;
            else an.raw_defs.erase(name);
            if (saved_cls) an.def_cls[name] = *saved_cls;
            else an.def_cls.erase(name);
        }
    };

    StdRef lower_std(const SP& n) {
        switch (n->k) {
            case SNode::K::Nil: return std_nil();
            case SNode::K::Skip: return std_skip();
            case SNode::K::Throw: return std_throw();
            case SNode::K::Yield: return std_yield();
            case SNode::K::Event: return std_atomic(n->ev);
            case SNode::K::Prefix: return std_prefix(n->ev, lower_std(n->a));
            case SNode::K::Seq: return std_seq(lower_std(n->a), lower_std(n->b));
            case SNode::K::Ext: return std_ext_choice(lower_std(n->a), lower_std(n->b));
            case SNode::K::Int: return std_int_choice(lower_std(n->a), lower_std(n->b));
            case SNode::K::Handler: return std_handler(lower_std(n->a), lower_std(n->b));
            case SNode::K::Par:
                return std_parallel(resolve_set(n), lower_std(n->a), lower_std(n->b));
            case SNode::K::IndexedPar: return lower_indexed_std(n);
            case SNode::K::Hide: return std_hide(lower_std(n->a), resolve_set(n));
            case SNode::K::Rename: return std_rename(lower_std(n->a), n->ren);
            case SNode::K::Block: {
                if (cls_of(n->a) != Cls::Comp)
                    fail(n, "transaction block body must be a compensable process");
                return std_block(lower_comp(n->a));
            }
            case SNode::K::If:
                return std_if(n->cond, lower_std(n->a), lower_std(n->b));
            case SNode::K::While: return std_while(n->cond, lower_std(n->a));
            case SNode::K::Assign: {
                if (cls_of(n->a) != Cls::Std)
                    fail(n, "process variables hold standard processes");
                return std_assign(n->name, lower_std(n->a));
            }
            case SNode::K::Mu: return lower_mu_std(n);
            case SNode::K::Ident: {
                if (an.is_defined(n->name)) {
                    Cls c = an.def_cls.count(n->name)
                                ? an.def_cls[n->name]
                                : (an.base && an.base->comp_defs.count(n->name) ? Cls::Comp
                                                                                : Cls::Std);
                    if (c != Cls::Std)
                        fail(n, "'" + n->name + "' names a compensable process");
                    return std_named(n->name);
                }
                if (procvar_shaped(n->name)) return std_proc_var(n->name);
                return std_atomic(comm_plain(n->name));
            }
            default:
                fail(n, "compensable construct in a standard-process position");
        }
    }

    CompRef lower_comp(const SP& n) {
        switch (n->k) {
            case SNode::K::Skipp: return comp_skipp();
            case SNode::K::Throww: return comp_throww();
            case SNode::K::Yieldd: return comp_yieldd();
            case SNode::K::Pair: {
                StdRef fwd = lower_std(n->a);
                // p / X is a variable compensation pair when X is an
                // undefined process-variable-shaped identifier.
                if (n->b->k == SNode::K::Ident && procvar_shaped(n->b->name) &&
                    !an.is_defined(n->b->name)) {
                    return comp_var_pair(std::move(fwd), n->b->name);
                }
                return comp_pair(std::move(fwd), lower_std(n->b));
            }
            case SNode::K::Seq: return comp_seq(lower_comp(n->a), lower_comp(n->b));
            case SNode::K::Ext: return comp_ext_choice(lower_comp(n->a), lower_comp(n->b));
            case SNode::K::Int: return comp_int_choice(lower_comp(n->a), lower_comp(n->b));
            case SNode::K::Spec: return comp_spec_choice(lower_comp(n->a), lower_comp(n->b));
            case SNode::K::Par:
                return comp_parallel(resolve_set(n), lower_comp(n->a), lower_comp(n->b));
            case SNode::K::IndexedPar: return lower_indexed_comp(n);
            case SNode::K::Hide: return comp_hide(lower_comp(n->a), resolve_set(n));
            case SNode::K::Rename: return comp_rename(lower_comp(n->a), n->ren);
            case SNode::K::If:
                return comp_if(n->cond, lower_comp(n->a), lower_comp(n->b));
            case SNode::K::While: return comp_while(n->cond, lower_comp(n->a));
            case SNode::K::Mu: return lower_mu_comp(n);
            case SNode::K::Ident: {
                if (an.is_defined(n->name)) return comp_named(n->name);
                fail(n, "'" + n->name + "' is not a compensable process definition");
            }
            default:
                fail(n, "standard construct in a compensable-process position");
        }
    }

    long long eval_bound(const IntExprRef& e, const SP& n) {
        try {
            return eval_int(e, model.initial_sigma);
        } catch (const SemanticsError& err) {
            fail(n, std::string("cannot resolve indexed-parallel bound: ") + err.what());
        }
    }

    StdRef lower_indexed_std(const SP& n) {
        long long lo = eval_bound(n->lo, n);
        long long hi = eval_bound(n->hi, n);
        if (hi < lo) fail(n, "indexed parallel has an empty range");
        return expand_indexed_parallel(n->name, lo, hi, lower_std(n->a));
    }

    CompRef lower_indexed_comp(const SP& n) {
        long long lo = eval_bound(n->lo, n);
        long long hi = eval_bound(n->hi, n);
        if (hi < lo) fail(n, "indexed parallel has an empty range");
        return expand_indexed_parallel(n->name, lo, hi, lower_comp(n->a));
    }

    // μN.body becomes an anonymous definition __muK_N = body with the
    // binder resolving to it.
    StdRef lower_mu_std(const SP& n) {
        std::string fresh = "__mu" + std::to_string(++mu_counter) + "_" + n->name;
        auto binder = mknode(SNode::K::Ident, n->line, n->col);
        binder->name = fresh;
        an.def_cls[fresh] = Cls::Std;
        StdRef body;
        {
            BinderScope scope(an, n->name, binder, Cls::Std);
            body = lower_std(n->a);
        }
        model.std_defs[fresh] = rebind(body, n->name, fresh);
        return std_named(fresh);
    }

    CompRef lower_mu_comp(const SP& n) {
        std::string fresh = "__mu" + std::to_string(++mu_counter) + "_" + n->name;
        auto binder = mknode(SNode::K::Ident, n->line, n->col);
        binder->name = fresh;
        an.def_cls[fresh] = Cls::Comp;
        CompRef body;
        {
            BinderScope scope(an, n->name, binder, Cls::Comp);
            body = lower_comp(n->a);
        }
        model.comp_defs[fresh] = rebind(body, n->name, fresh);
        return comp_named(fresh);
    }

    // Rename Named references after μ-lowering (binder name -> fresh name).
    static StdRef rebind(const StdRef& p, const std::string& from, const std::string& to) {
        if (!p) return p;
        switch (p->kind) {
            case StdKind::Named:
                if (p->name == from) return std_named(to);
                return p;
            case StdKind::Prefix: return std_prefix(p->ev, rebind(p->a, from, to));
            case StdKind::Seq: return std_seq(rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::ExtChoice:
                return std_ext_choice(rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::IntChoice:
                return std_int_choice(rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::Handler:
                return std_handler(rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::Parallel:
                return std_parallel(p->set, rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::Hide: return std_hide(rebind(p->a, from, to), p->set);
            case StdKind::Rename: return std_rename(rebind(p->a, from, to), p->ren);
            case StdKind::Block: return std_block(rebind(p->body, from, to));
            case StdKind::If:
                return std_if(p->cond, rebind(p->a, from, to), rebind(p->b, from, to));
            case StdKind::While: return std_while(p->cond, rebind(p->a, from, to));
            case StdKind::Assign: return std_assign(p->name, rebind(p->a, from, to));
            case StdKind::AuxStd:
                return std_aux(rebind(p->a, from, to), rebind(p->b, from, to));
            default: return p;
        }
    }

    static CompRef rebind(const CompRef& pp, const std::string& from, const std::string& to) {
        if (!pp) return pp;
        switch (pp->kind) {
            case CompKind::Named:
                if (pp->name == from) return comp_named(to);
                return pp;
            case CompKind::Pair:
                return comp_pair(rebind(pp->sa, from, to), rebind(pp->sb, from, to));
            case CompKind::VarPair:
                return comp_var_pair(rebind(pp->sa, from, to), pp->name);
            case CompKind::Seq:
                return comp_seq(rebind(pp->pa, from, to), rebind(pp->pb, from, to));
            case CompKind::ExtChoice:
                return comp_ext_choice(rebind(pp->pa, from, to), rebind(pp->pb, from, to));
            case CompKind::IntChoice:
                return comp_int_choice(rebind(pp->pa, from, to), rebind(pp->pb, from, to));
            case CompKind::SpecChoice:
                return comp_spec_choice(rebind(pp->pa, from, to), rebind(pp->pb, from, to));
            case CompKind::Parallel:
                return comp_parallel(pp->set, rebind(pp->pa, from, to),
                                     rebind(pp->pb, from, to));
            case CompKind::Hide: return comp_hide(rebind(pp->pa, from, to), pp->set);
            case CompKind::Rename: return comp_rename(rebind(pp->pa, from, to), pp->ren);
            case CompKind::If:
                return comp_if(pp->cond, rebind(pp->pa, from, to), rebind(pp->pb, from, to));
            case CompKind::While: return comp_while(pp->cond, rebind(pp->pa, from, to));
            case CompKind::Aux:
                return comp_aux(rebind(pp->pa, from, to), rebind(pp->sa, from, to));
        }
        return pp;
    }
};

}  // namespace

// ------------------------------------------------------------- substitution

StdRef substitute_data_var(const StdRef& p, const std::string& var, long long value);
CompRef substitute_data_var(const CompRef& pp, const std::string& var, long long value);

namespace {

IntExprRef subst(const IntExprRef& e, const std::string& var, long long value) {
    if (!e) return e;
    switch (e->kind) {
        case IntExpr::Kind::Lit: return e;
        case IntExpr::Kind::Var: return e->var == var ? int_lit(value) : e;
        default:
            return int_bin(e->kind, subst(e->lhs, var, value), subst(e->rhs, var, value));
    }
}

BoolExprRef subst(const BoolExprRef& e, const std::string& var, long long value) {
    if (!e) return e;
    switch (e->kind) {
        case BoolExpr::Kind::Lit: return e;
        case BoolExpr::Kind::Cmp:
            return bool_cmp(e->cmp, subst(e->il, var, value), subst(e->ir, var, value));
        case BoolExpr::Kind::Not: return bool_not(subst(e->bl, var, value));
        case BoolExpr::Kind::And:
            return bool_and(subst(e->bl, var, value), subst(e->br, var, value));
        case BoolExpr::Kind::Or:
            return bool_or(subst(e->bl, var, value), subst(e->br, var, value));
    }
    return e;
}

CommEvent subst(const CommEvent& ev, const std::string& var, long long value) {
    CommEvent out = ev;
    for (auto& it : out.items) {
        if (it.kind != CommItem::Kind::In) it.expr = subst(it.expr, var, value);
    }
    return out;
}

}  // namespace

StdRef substitute_data_var(const StdRef& p, const std::string& var, long long value) {
    if (!p) return p;
    switch (p->kind) {
        case StdKind::Atomic: return std_atomic(subst(p->ev, var, value));
        case StdKind::Prefix:
            return std_prefix(subst(p->ev, var, value), substitute_data_var(p->a, var, value));
        case StdKind::Seq:
            return std_seq(substitute_data_var(p->a, var, value),
                           substitute_data_var(p->b, var, value));
        case StdKind::ExtChoice:
            return std_ext_choice(substitute_data_var(p->a, var, value),
                                  substitute_data_var(p->b, var, value));
        case StdKind::IntChoice:
            return std_int_choice(substitute_data_var(p->a, var, value),
                                  substitute_data_var(p->b, var, value));
        case StdKind::Handler:
            return std_handler(substitute_data_var(p->a, var, value),
                               substitute_data_var(p->b, var, value));
        case StdKind::Parallel:
            return std_parallel(p->set, substitute_data_var(p->a, var, value),
                                substitute_data_var(p->b, var, value));
        case StdKind::Hide: return std_hide(substitute_data_var(p->a, var, value), p->set);
        case StdKind::Rename: return std_rename(substitute_data_var(p->a, var, value), p->ren);
        case StdKind::Block: return std_block(substitute_data_var(p->body, var, value));
        case StdKind::If:
            return std_if(subst(p->cond, var, value), substitute_data_var(p->a, var, value),
                          substitute_data_var(p->b, var, value));
        case StdKind::While:
            return std_while(subst(p->cond, var, value),
                             substitute_data_var(p->a, var, value));
        case StdKind::Assign:
            return std_assign(p->name, substitute_data_var(p->a, var, value));
        case StdKind::AuxStd:
            return std_aux(substitute_data_var(p->a, var, value),
                           substitute_data_var(p->b, var, value));
        default: return p;
    }
}

CompRef substitute_data_var(const CompRef& pp, const std::string& var, long long value) {
    if (!pp) return pp;
    switch (pp->kind) {
        case CompKind::Pair:
            return comp_pair(substitute_data_var(pp->sa, var, value),
                             substitute_data_var(pp->sb, var, value));
        case CompKind::VarPair:
            return comp_var_pair(substitute_data_var(pp->sa, var, value), pp->name);
        case CompKind::Seq:
            return comp_seq(substitute_data_var(pp->pa, var, value),
                            substitute_data_var(pp->pb, var, value));
        case CompKind::ExtChoice:
            return comp_ext_choice(substitute_data_var(pp->pa, var, value),
                                   substitute_data_var(pp->pb, var, value));
        case CompKind::IntChoice:
            return comp_int_choice(substitute_data_var(pp->pa, var, value),
                                   substitute_data_var(pp->pb, var, value));
        case CompKind::SpecChoice:
            return comp_spec_choice(substitute_data_var(pp->pa, var, value),
                                    substitute_data_var(pp->pb, var, value));
        case CompKind::Parallel:
            return comp_parallel(pp->set, substitute_data_var(pp->pa, var, value),
                                 substitute_data_var(pp->pb, var, value));
        case CompKind::Hide:
            return comp_hide(substitute_data_var(pp->pa, var, value), pp->set);
        case CompKind::Rename:
            return comp_rename(substitute_data_var(pp->pa, var, value), pp->ren);
        case CompKind::If:
            return comp_if(subst(pp->cond, var, value),
                           substitute_data_var(pp->pa, var, value),
                           substitute_data_var(pp->pb, var, value));
        case CompKind::While:
            return comp_while(subst(pp->cond, var, value),
                              substitute_data_var(pp->pa, var, value));
        case CompKind::Aux:
            return comp_aux(substitute_data_var(pp->pa, var, value),
                            substitute_data_var(pp->sa, var, value));
        case CompKind::Named: return pp;
    }
    return pp;
}

StdRef expand_indexed_parallel(const std::string& index_var, long long lo, long long hi,
                               const StdRef& body) {
    StdRef out = substitute_data_var(body, index_var, hi);
    for (long long i = hi - 1; i >= lo; --i) {
        out = std_parallel({}, substitute_data_var(body, index_var, i), out);
    }
    return out;
}

CompRef expand_indexed_parallel(const std::string& index_var, long long lo, long long hi,
                                const CompRef& body) {
    CompRef out = substitute_data_var(body, index_var, hi);
    for (long long i = hi - 1; i >= lo; --i) {
        out = comp_parallel({}, substitute_data_var(body, index_var, i), out);
    }
    return out;
}

// -------------------------------------------------------------- model level

std::vector<FreshnessViolation> check_freshness(const ModelDefinition& model) {
    std::map<std::string, std::vector<std::string>> sites;

    auto scan_std = [&](const StdRef& p, const std::string& def, auto&& self_std,
                        auto&& self_comp) -> void {
        if (!p) return;
        self_std(p->a, def, self_std, self_comp);
        self_std(p->b, def, self_std, self_comp);
        self_comp(p->body, def, self_std, self_comp);
    };
    auto scan_comp = [&](const CompRef& pp, const std::string& def, auto&& self_std,
                         auto&& self_comp) -> void {
        if (!pp) return;
        if (pp->kind == CompKind::VarPair) sites[pp->name].push_back(def);
        self_std(pp->sa, def, self_std, self_comp);
        self_std(pp->sb, def, self_std, self_comp);
        self_comp(pp->pa, def, self_std, self_comp);
        self_comp(pp->pb, def, self_std, self_comp);
    };

    for (const auto& [name, p] : model.std_defs) scan_std(p, name, scan_std, scan_comp);
    for (const auto& [name, pp] : model.comp_defs) scan_comp(pp, name, scan_std, scan_comp);

    std::vector<FreshnessViolation> out;
    for (auto& [var, where] : sites) {
        if (where.size() > 1) out.push_back({var, where});
    }
    return out;
}

namespace {

void parse_option(Parser& ps, ModelDefinition& model) {
    std::string key = ps.expect_ident("option name");
    ps.expect(Tok::Eq, "'='");
    auto value_ident = [&]() {
        if (!ps.at(Tok::Ident)) ps.fail("expected option value");
        std::string v = ps.cur.text;
        ps.bump();
        return v;
    };
    if (key == "mode") {
        std::string v = value_ident();
        if (v == "propagate") model.options.fault_mode = FaultMode::Propagate;
        else if (v == "contain") model.options.fault_mode = FaultMode::Contain;
        else ps.fail("mode is 'propagate' or 'contain'");
    } else if (key == "interruptible_atoms") {
        std::string v = value_ident();
        if (v == "on") model.options.interruptible_atoms = true;
        else if (v == "off") model.options.interruptible_atoms = false;
        else ps.fail("interruptible_atoms is 'on' or 'off'");
    } else if (key == "unassigned_vars") {
        std::string v = value_ident();
        if (v == "error") model.options.unassigned_vars = UnassignedVarMode::Error;
        else if (v == "skip") model.options.unassigned_vars = UnassignedVarMode::DefaultSkip;
        else ps.fail("unassigned_vars is 'error' or 'skip'");
    } else if (key == "max_channel_enum") {
        if (!ps.at(Tok::Int)) ps.fail("expected integer");
        model.options.max_channel_enum = static_cast<int>(ps.cur.num);
        ps.bump();
    } else if (key == "depth") {
        if (!ps.at(Tok::Int)) ps.fail("expected integer");
        model.default_depth = static_cast<int>(ps.cur.num);
        ps.bump();
    } else if (key == "max_states") {
        if (!ps.at(Tok::Int)) ps.fail("expected integer");
        model.default_max_states = ps.cur.num;
        ps.bump();
    } else {
        ps.fail("unknown option '" + key + "'");
    }
}

void parse_domain(Parser& ps, ModelDefinition& model) {
    EventName chan = ps.set_entry();
    ps.expect(Tok::Eq, "'='");
    std::vector<long long> values;
    if (ps.at(Tok::LBrace)) {
        ps.bump();
        if (!ps.at(Tok::RBrace)) {
            for (;;) {
                bool neg = false;
                if (ps.at(Tok::Minus)) {
                    neg = true;
                    ps.bump();
                }
                if (!ps.at(Tok::Int)) ps.fail("expected integer");
                values.push_back(neg ? -ps.cur.num : ps.cur.num);
                ps.bump();
                if (!ps.at(Tok::Comma)) break;
                ps.bump();
            }
        }
        ps.expect(Tok::RBrace, "'}'");
    } else {
        if (!ps.at(Tok::Int)) ps.fail("expected integer or '{'");
        long long lo = ps.cur.num;
        ps.bump();
        ps.expect(Tok::DotDot, "'..'");
        if (!ps.at(Tok::Int)) ps.fail("expected integer");
        long long hi = ps.cur.num;
        ps.bump();
        if (hi < lo) ps.fail("empty domain range");
        for (long long v = lo; v <= hi; ++v) values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    model.domains[chan] = std::move(values);
}

}  // namespace

ModelDefinition parse_model(const std::string& text) {
    Parser ps(text);
    ModelDefinition model;
    Analyzer an;
    std::map<std::string, std::pair<int, int>> def_pos;

    while (!ps.at(Tok::End)) {
        if (ps.at_kw("option")) {
            ps.bump();
            parse_option(ps, model);
            continue;
        }
        if (ps.at_kw("domain")) {
            ps.bump();
            parse_domain(ps, model);
            continue;
        }
        if (ps.at_kw("syncset")) {
            ps.bump();
            std::string name = ps.expect_ident("syncset name");
            ps.expect(Tok::Eq, "'='");
            std::vector<EventName> names;
            std::vector<std::string> aliases;
            ps.parse_set(names, &aliases);
            for (const auto& alias : aliases) {
                auto it = model.syncset_aliases.find(alias);
                if (it == model.syncset_aliases.end()) {
                    names.push_back(EventName(alias));
                } else {
                    for (const auto& e : it->second) names.push_back(e);
                }
            }
            model.syncset_aliases[name] = make_event_set(std::move(names));
            continue;
        }
        if (ps.at_kw("init")) {
            ps.bump();
            model.initial_name = ps.expect_ident("initial process name");
            if (ps.at_kw("with")) {
                ps.bump();
                for (;;) {
                    std::string var = ps.expect_ident("data variable");
                    ps.expect(Tok::Eq, "'='");
                    bool neg = false;
                    if (ps.at(Tok::Minus)) {
                        neg = true;
                        ps.bump();
                    }
                    if (!ps.at(Tok::Int)) ps.fail("expected integer");
                    model.initial_sigma[var] = neg ? -ps.cur.num : ps.cur.num;
                    ps.bump();
                    if (!ps.at(Tok::Comma)) break;
                    ps.bump();
                }
            }
            continue;
        }
        // A definition: Name = process
        int ln = ps.cur.line, cl = ps.cur.col;
        std::string name = ps.expect_ident("definition name");
        if (!std::isupper(static_cast<unsigned char>(name[0])))
            throw ParseError(ln, cl, "process names start with an uppercase letter");
        ps.expect(Tok::Eq, "'='");
        SP body = ps.process();
        if (an.raw_defs.count(name))
            throw ParseError(ln, cl, "duplicate definition of '" + name + "'");
        an.raw_defs[name] = body;
        def_pos[name] = {ln, cl};
    }

    an.resolve_classes();

    Lowerer lo{an, model};
    // μ-lowering may add fresh definitions while iterating; take a snapshot.
    std::vector<std::pair<std::string, SP>> snapshot(an.raw_defs.begin(), an.raw_defs.end());
    for (const auto& [name, body] : snapshot) {
        if (an.def_cls[name] == Cls::Comp) {
            model.comp_defs[name] = lo.lower_comp(body);
        } else {
            model.std_defs[name] = lo.lower_std(body);
        }
    }

    if (!model.initial_name.empty() && !model.has_def(model.initial_name))
        throw ParseError(1, 1, "initial process '" + model.initial_name + "' is not defined");

    auto violations = check_freshness(model);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::string sites;
        for (const auto& s : v.sites) sites += (sites.empty() ? "" : ", ") + s;
        throw ParseError(1, 1, "process variable '" + v.var +
                                   "' is bound by more than one variable compensation pair (" +
                                   sites + ")");
    }
    return model;
}

Term parse_term(const std::string& text, const ModelDefinition& base) {
    Parser ps(text);
    SP body = ps.process();
    if (!ps.at(Tok::End)) ps.fail("trailing input after process");

    Analyzer an;
    an.base = &base;
    ModelDefinition scratch = base;
    Lowerer lo{an, scratch};
    Term out = an.classify(body) == Cls::Comp ? Term(lo.lower_comp(body))
                                              : Term(lo.lower_std(body));
    if (lo.mu_counter > 0)
        throw ParseError(1, 1, "mu is only supported inside model files; use a named definition");
    return out;
}

}  // namespace deccsp
