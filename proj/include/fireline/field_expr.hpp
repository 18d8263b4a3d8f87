// fireline - scalar field expressions in t, x1, x2 with forward-mode jets
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fireline {

// Value of a scalar field together with its first partials at one point.
struct ScalarJet {
    double value = 0.0;
    double d_t = 0.0;
    double d_x1 = 0.0;
    double d_x2 = 0.0;
};

enum class Var : std::uint8_t { t, x1, x2 };
enum class UnaryOp : std::uint8_t { neg, sin, cos, exp, sqrt, abs };
enum class BinaryOp : std::uint8_t { add, sub, mul, div };

// Expression tree over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' number)?
//   base   := number | ident | '(' expr ')' | func '(' expr ')' | '-' base
// with ident in {t, x1, x2} and func in {sin, cos, exp, sqrt, abs}.
// Nodes live in a flat pool in post-order (children precede parents);
// immutable after parsing.
class Expr {
public:
    enum class Kind : std::uint8_t { number, variable, unary, binary, pow_const };

    struct Node {
        Kind kind;
        std::uint32_t pos = 0;  // source offset, for error messages
        double number = 0.0;    // number literal or pow exponent
        Var var = Var::t;
        UnaryOp uop = UnaryOp::neg;
        BinaryOp bop = BinaryOp::add;
        std::int32_t lhs = -1;
        std::int32_t rhs = -1;
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }

    bool mentions(Var v) const;

    // Rebuild with every occurrence of `v` replaced by a constant.
    Expr substituted(Var v, double value) const;

    // Round-trippable text form under standard precedence.
    std::string to_string() const;

    friend Expr parse_expr(std::string_view text);

private:
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

// Parse `text`; throws ParseError with the offending offset.
Expr parse_expr(std::string_view text);

// Evaluate value and exact first partials by forward-mode rules.
// Throws EvalError at non-differentiable points (abs at 0, sqrt at <= 0,
// division by zero) and on non-finite results.
ScalarJet eval_jet(const Expr& e, double t, double x1, double x2);

// Value-only evaluation (same domain rules as eval_jet).
double eval_value(const Expr& e, double t, double x1, double x2);

}  // namespace fireline
