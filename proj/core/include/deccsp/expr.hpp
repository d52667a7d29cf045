#pragma once

#include <memory>
#include <set>
#include <string>

namespace deccsp {

struct IntExpr;
struct BoolExpr;
using IntExprRef = std::shared_ptr<const IntExpr>;
using BoolExprRef = std::shared_ptr<const BoolExpr>;

// Integer expressions over data variables (lowercase identifiers).
struct IntExpr {
    enum class Kind : uint8_t { Lit, Var, Add, Sub, Mul, Div };

    Kind kind;
    long long lit = 0;      // Lit
    std::string var;        // Var
    IntExprRef lhs, rhs;    // binary ops

    size_t hash = 0;
};

IntExprRef int_lit(long long v);
IntExprRef int_var(std::string name);
IntExprRef int_bin(IntExpr::Kind op, IntExprRef l, IntExprRef r);

enum class CmpOp : uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

struct BoolExpr {
    enum class Kind : uint8_t { Lit, Cmp, And, Or, Not };

    Kind kind;
    bool lit = false;       // Lit
    CmpOp cmp = CmpOp::Eq;  // Cmp
    IntExprRef il, ir;      // Cmp operands
    BoolExprRef bl, br;     // And/Or/Not (Not uses bl)

    size_t hash = 0;
};

BoolExprRef bool_lit(bool v);
BoolExprRef bool_cmp(CmpOp op, IntExprRef l, IntExprRef r);
BoolExprRef bool_and(BoolExprRef l, BoolExprRef r);
BoolExprRef bool_or(BoolExprRef l, BoolExprRef r);
BoolExprRef bool_not(BoolExprRef e);

bool expr_equal(const IntExprRef& a, const IntExprRef& b);
bool expr_equal(const BoolExprRef& a, const BoolExprRef& b);

void collect_data_vars(const IntExprRef& e, std::set<std::string>& out);
void collect_data_vars(const BoolExprRef& e, std::set<std::string>& out);

std::string expr_str(const IntExprRef& e);
std::string expr_str(const BoolExprRef& e);

}  // namespace deccsp
