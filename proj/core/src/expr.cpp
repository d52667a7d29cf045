#include "deccsp/expr.hpp"

#include <functional>

namespace deccsp {

static size_t mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

IntExprRef int_lit(long long v) {
    auto e = std::make_shared<IntExpr>();
    e->kind = IntExpr::Kind::Lit;
    e->lit = v;
    e->hash = mix(0x11, std::hash<long long>{}(v));
    return e;
}

IntExprRef int_var(std::string name) {
    auto e = std::make_shared<IntExpr>();
    e->kind = IntExpr::Kind::Var;
    e->hash = mix(0x22, std::hash<std::string>{}(name));
    e->var = std::move(name);
    return e;
}

IntExprRef int_bin(IntExpr::Kind op, IntExprRef l, IntExprRef r) {
    auto e = std::make_shared<IntExpr>();
    e->kind = op;
    e->hash = mix(mix(static_cast<size_t>(op) * 0x33, l->hash), r->hash);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

BoolExprRef bool_lit(bool v) {
    auto e = std::make_shared<BoolExpr>();
    e->kind = BoolExpr::Kind::Lit;
    e->lit = v;
    e->hash = mix(0x44, v ? 1 : 2);
    return e;
}

BoolExprRef bool_cmp(CmpOp op, IntExprRef l, IntExprRef r) {
    auto e = std::make_shared<BoolExpr>();
    e->kind = BoolExpr::Kind::Cmp;
    e->cmp = op;
    e->hash = mix(mix(static_cast<size_t>(op) * 0x55 + 0x1000, l->hash), r->hash);
    e->il = std::move(l);
    e->ir = std::move(r);
    return e;
}

static BoolExprRef bool_bin(BoolExpr::Kind k, BoolExprRef l, BoolExprRef r) {
    auto e = std::make_shared<BoolExpr>();
    e->kind = k;
    e->hash = mix(mix(static_cast<size_t>(k) * 0x66 + 0x2000, l->hash), r ? r->hash : 0);
    e->bl = std::move(l);
    e->br = std::move(r);
    return e;
}

BoolExprRef bool_and(BoolExprRef l, BoolExprRef r) {
    return bool_bin(BoolExpr::Kind::And, std::move(l), std::move(r));
}
BoolExprRef bool_or(BoolExprRef l, BoolExprRef r) {
    return bool_bin(BoolExpr::Kind::Or, std::move(l), std::move(r));
}
BoolExprRef bool_not(BoolExprRef e) {
    return bool_bin(BoolExpr::Kind::Not, std::move(e), nullptr);
}

bool expr_equal(const IntExprRef& a, const IntExprRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
        case IntExpr::Kind::Lit: return a->lit == b->lit;
        case IntExpr::Kind::Var: return a->var == b->var;
        default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

bool expr_equal(const BoolExprRef& a, const BoolExprRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
        case BoolExpr::Kind::Lit: return a->lit == b->lit;
        case BoolExpr::Kind::Cmp:
            return a->cmp == b->cmp && expr_equal(a->il, b->il) && expr_equal(a->ir, b->ir);
        case BoolExpr::Kind::Not: return expr_equal(a->bl, b->bl);
        default: return expr_equal(a->bl, b->bl) && expr_equal(a->br, b->br);
    }
}

void collect_data_vars(const IntExprRef& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == IntExpr::Kind::Var) out.insert(e->var);
    collect_data_vars(e->lhs, out);
    collect_data_vars(e->rhs, out);
}

void collect_data_vars(const BoolExprRef& e, std::set<std::string>& out) {
    if (!e) return;
    collect_data_vars(e->il, out);
    collect_data_vars(e->ir, out);
    collect_data_vars(e->bl, out);
    collect_data_vars(e->br, out);
}

// Precedence-aware printing; output reparses to an equal expression.
static std::string istr(const IntExprRef& e, int parent_prec) {
    int prec;
    std::string op;
    switch (e->kind) {
        case IntExpr::Kind::Lit: return std::to_string(e->lit);
        case IntExpr::Kind::Var: return e->var;
        case IntExpr::Kind::Add: prec = 1; op = " + "; break;
        case IntExpr::Kind::Sub: prec = 1; op = " - "; break;
        case IntExpr::Kind::Mul: prec = 2; op = " * "; break;
        case IntExpr::Kind::Div: prec = 2; op = " / "; break;
    }
    std::string s = istr(e->lhs, prec) + op + istr(e->rhs, prec + 1);
    if (prec < parent_prec) return "(" + s + ")";
    return s;
}

std::string expr_str(const IntExprRef& e) { return istr(e, 0); }

static const char* cmp_str(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return " = ";
        case CmpOp::Ne: return " != ";
        case CmpOp::Lt: return " < ";
        case CmpOp::Le: return " <= ";
        case CmpOp::Gt: return " > ";
        case CmpOp::Ge: return " >= ";
    }
    return " = ";
}

static std::string bstr(const BoolExprRef& e, int parent_prec) {
    int prec;
    std::string s;
    switch (e->kind) {
        case BoolExpr::Kind::Lit: return e->lit ? "true" : "false";
        case BoolExpr::Kind::Cmp:
            return istr(e->il, 0) + cmp_str(e->cmp) + istr(e->ir, 0);
        case BoolExpr::Kind::Not:
            return "not " + bstr(e->bl, 3);
        case BoolExpr::Kind::And:
            prec = 2;
            s = bstr(e->bl, prec) + " and " + bstr(e->br, prec + 1);
            break;
        case BoolExpr::Kind::Or:
            prec = 1;
            s = bstr(e->bl, prec) + " or " + bstr(e->br, prec + 1);
            break;
    }
    if (prec < parent_prec) return "(" + s + ")";
    return s;
}

std::string expr_str(const BoolExprRef& e) { return bstr(e, 0); }

}  // namespace deccsp
