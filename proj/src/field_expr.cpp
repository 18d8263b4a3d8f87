#include "fireline/field_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "fireline/errors.hpp"

namespace fireline {

// ============================================================================
// Parser
// ============================================================================

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr::Node& node(std::int32_t i) { return nodes_[static_cast<std::size_t>(i)]; }

    std::int32_t parse() {
        const std::int32_t r = parse_expr_rule();
        skip_ws();
        if (pos_ < text_.size())
            fail("unexpected trailing input");
        return r;
    }

    std::vector<Expr::Node> take_nodes() { return std::move(nodes_); }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::int32_t add(Expr::Node n) {
        nodes_.push_back(n);
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    double parse_number_literal() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
            skip_ws();
            start = pos_;
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first)
            fail("expected a numeric constant");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return neg ? -value : value;
    }

    std::int32_t parse_expr_rule() {
        std::int32_t lhs = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const auto op_pos = static_cast<std::uint32_t>(pos_);
            ++pos_;
            const std::int32_t rhs = parse_term();
            Expr::Node n{Expr::Kind::binary, op_pos};
            n.bop = (c == '+') ? BinaryOp::add : BinaryOp::sub;
            n.lhs = lhs;
            n.rhs = rhs;
            lhs = add(n);
        }
    }

    std::int32_t parse_term() {
        std::int32_t lhs = parse_factor();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            const auto op_pos = static_cast<std::uint32_t>(pos_);
            ++pos_;
            const std::int32_t rhs = parse_factor();
            Expr::Node n{Expr::Kind::binary, op_pos};
            n.bop = (c == '*') ? BinaryOp::mul : BinaryOp::div;
            n.lhs = lhs;
            n.rhs = rhs;
            lhs = add(n);
        }
    }

    std::int32_t parse_factor() {
        std::int32_t base = parse_base();
        if (peek() == '^') {
            const auto op_pos = static_cast<std::uint32_t>(pos_);
            ++pos_;
            // exponent must be a (possibly signed) numeric literal
            const double e = parse_number_literal();
            Expr::Node n{Expr::Kind::pow_const, op_pos};
            n.number = e;
            n.lhs = base;
            base = add(n);
        }
        return base;
    }

    std::int32_t parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        const auto start = static_cast<std::uint32_t>(pos_);

        if (c == '-') {
            ++pos_;
            const std::int32_t child = parse_base();
            Expr::Node n{Expr::Kind::unary, start};
            n.uop = UnaryOp::neg;
            n.lhs = child;
            return add(n);
        }
        if (c == '(') {
            ++pos_;
            const std::int32_t inner = parse_expr_rule();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            Expr::Node n{Expr::Kind::number, start};
            n.number = parse_number_literal();
            return add(n);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string_view ident = text_.substr(pos_, end - pos_);
            pos_ = end;

            if (ident == "t" || ident == "x1" || ident == "x2") {
                Expr::Node n{Expr::Kind::variable, start};
                n.var = ident == "t" ? Var::t : (ident == "x1" ? Var::x1 : Var::x2);
                return add(n);
            }
            UnaryOp op;
            if (ident == "sin") op = UnaryOp::sin;
            else if (ident == "cos") op = UnaryOp::cos;
            else if (ident == "exp") op = UnaryOp::exp;
            else if (ident == "sqrt") op = UnaryOp::sqrt;
            else if (ident == "abs") op = UnaryOp::abs;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(ident) + "'");
            }
            if (!eat('(')) fail("expected '(' after function name");
            const std::int32_t arg = parse_expr_rule();
            if (!eat(')')) fail("expected ')'");
            Expr::Node n{Expr::Kind::unary, start};
            n.uop = op;
            n.lhs = arg;
            return add(n);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Expr::Node> nodes_;
};

}  // namespace

Expr parse_expr(std::string_view text) {
    // reject all-whitespace input up front for a clearer message
    bool blank = true;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) throw ParseError("empty expression", 0);

    Parser p(text);
    Expr e;
    e.root_ = p.parse();
    e.nodes_ = p.take_nodes();
    return e;
}

// ============================================================================
// Jet evaluation
// ============================================================================

namespace {

ScalarJet jet_unary(UnaryOp op, const ScalarJet& a, std::uint32_t pos) {
    ScalarJet r;
    double f = 0.0, df = 0.0;
    switch (op) {
        case UnaryOp::neg:
            return {-a.value, -a.d_t, -a.d_x1, -a.d_x2};
        case UnaryOp::sin:
            f = std::sin(a.value);
            df = std::cos(a.value);
            break;
        case UnaryOp::cos:
            f = std::cos(a.value);
            df = -std::sin(a.value);
            break;
        case UnaryOp::exp:
            f = std::exp(a.value);
            df = f;
            break;
        case UnaryOp::sqrt:
            if (!(a.value > 0.0))
                throw EvalError("sqrt of non-positive value (offset " + std::to_string(pos) + ")");
            f = std::sqrt(a.value);
            df = 0.5 / f;
            break;
        case UnaryOp::abs:
            if (a.value == 0.0)
                throw EvalError("abs evaluated at its kink (offset " + std::to_string(pos) + ")");
            f = std::fabs(a.value);
            df = a.value > 0.0 ? 1.0 : -1.0;
            break;
    }
    r.value = f;
    r.d_t = df * a.d_t;
    r.d_x1 = df * a.d_x1;
    r.d_x2 = df * a.d_x2;
    return r;
}

ScalarJet jet_pow(const ScalarJet& a, double e, std::uint32_t pos) {
    if (e == 0.0) return {1.0, 0.0, 0.0, 0.0};
    if (a.value == 0.0 && e < 1.0)
        throw EvalError("x^" + std::to_string(e) + " not differentiable at 0 (offset " +
                        std::to_string(pos) + ")");
    if (a.value < 0.0 && e != std::floor(e))
        throw EvalError("fractional power of a negative base (offset " + std::to_string(pos) + ")");
    const double f = std::pow(a.value, e);
    const double df = a.value == 0.0 ? 0.0 : e * f / a.value;
    return {f, df * a.d_t, df * a.d_x1, df * a.d_x2};
}

}  // namespace

ScalarJet eval_jet(const Expr& e, double t, double x1, double x2) {
    const auto& nodes = e.nodes();
    // nodes are in post-order, so a single forward pass suffices
    std::vector<ScalarJet> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Expr::Node& n = nodes[i];
        switch (n.kind) {
            case Expr::Kind::number:
                vals[i] = {n.number, 0.0, 0.0, 0.0};
                break;
            case Expr::Kind::variable:
                switch (n.var) {
                    case Var::t: vals[i] = {t, 1.0, 0.0, 0.0}; break;
                    case Var::x1: vals[i] = {x1, 0.0, 1.0, 0.0}; break;
                    case Var::x2: vals[i] = {x2, 0.0, 0.0, 1.0}; break;
                }
                break;
            case Expr::Kind::unary:
                vals[i] = jet_unary(n.uop, vals[static_cast<std::size_t>(n.lhs)], n.pos);
                break;
            case Expr::Kind::pow_const:
                vals[i] = jet_pow(vals[static_cast<std::size_t>(n.lhs)], n.number, n.pos);
                break;
            case Expr::Kind::binary: {
                const ScalarJet& a = vals[static_cast<std::size_t>(n.lhs)];
                const ScalarJet& b = vals[static_cast<std::size_t>(n.rhs)];
                ScalarJet r;
                switch (n.bop) {
                    case BinaryOp::add:
                        r = {a.value + b.value, a.d_t + b.d_t, a.d_x1 + b.d_x1, a.d_x2 + b.d_x2};
                        break;
                    case BinaryOp::sub:
                        r = {a.value - b.value, a.d_t - b.d_t, a.d_x1 - b.d_x1, a.d_x2 - b.d_x2};
                        break;
                    case BinaryOp::mul:
                        r = {a.value * b.value,
                             a.d_t * b.value + a.value * b.d_t,
                             a.d_x1 * b.value + a.value * b.d_x1,
                             a.d_x2 * b.value + a.value * b.d_x2};
                        break;
                    case BinaryOp::div: {
                        if (b.value == 0.0)
                            throw EvalError("division by zero (offset " + std::to_string(n.pos) +
                                            ")");
                        const double inv = 1.0 / b.value;
                        const double q = a.value * inv;
                        r = {q,
                             (a.d_t - q * b.d_t) * inv,
                             (a.d_x1 - q * b.d_x1) * inv,
                             (a.d_x2 - q * b.d_x2) * inv};
                        break;
                    }
                }
                vals[i] = r;
                break;
            }
        }
    }
    const ScalarJet& out = vals[static_cast<std::size_t>(e.root())];
    if (!std::isfinite(out.value) || !std::isfinite(out.d_t) || !std::isfinite(out.d_x1) ||
        !std::isfinite(out.d_x2))
        throw EvalError("expression produced a non-finite value");
    return out;
}

double eval_value(const Expr& e, double t, double x1, double x2) {
    return eval_jet(e, t, x1, x2).value;
}

// ============================================================================
// Introspection and printing
// ============================================================================

bool Expr::mentions(Var v) const {
    for (const Node& n : nodes_)
        if (n.kind == Kind::variable && n.var == v) return true;
    return false;
}

Expr Expr::substituted(Var v, double value) const {
    Expr out = *this;
    for (Node& n : out.nodes_) {
        if (n.kind == Kind::variable && n.var == v) {
            n.kind = Kind::number;
            n.number = value;
        }
    }
    return out;
}

namespace {

std::string number_to_string(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

constexpr const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::neg: return "-";
        case UnaryOp::sin: return "sin";
        case UnaryOp::cos: return "cos";
        case UnaryOp::exp: return "exp";
        case UnaryOp::sqrt: return "sqrt";
        case UnaryOp::abs: return "abs";
    }
    return "?";
}

// precedence levels: add/sub 1, mul/div 2, unary minus 3, pow 4, atoms 5
int precedence(const Expr::Node& n) {
    switch (n.kind) {
        case Expr::Kind::binary:
            return (n.bop == BinaryOp::add || n.bop == BinaryOp::sub) ? 1 : 2;
        case Expr::Kind::unary: return n.uop == UnaryOp::neg ? 3 : 5;
        case Expr::Kind::pow_const: return 4;
        default: return 5;
    }
}

void print_node(const std::vector<Expr::Node>& nodes, std::int32_t idx, std::string& out) {
    const Expr::Node& n = nodes[static_cast<std::size_t>(idx)];
    const auto child = [&](std::int32_t c, bool parens) {
        if (parens) out += '(';
        print_node(nodes, c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case Expr::Kind::number:
            if (n.number < 0.0) {
                out += '(';
                out += number_to_string(n.number);
                out += ')';
            } else {
                out += number_to_string(n.number);
            }
            break;
        case Expr::Kind::variable:
            out += n.var == Var::t ? "t" : (n.var == Var::x1 ? "x1" : "x2");
            break;
        case Expr::Kind::unary:
            if (n.uop == UnaryOp::neg) {
                out += '-';
                child(n.lhs, precedence(nodes[static_cast<std::size_t>(n.lhs)]) < 3);
            } else {
                out += unary_name(n.uop);
                out += '(';
                print_node(nodes, n.lhs, out);
                out += ')';
            }
            break;
        case Expr::Kind::pow_const:
            child(n.lhs, precedence(nodes[static_cast<std::size_t>(n.lhs)]) < 5);
            out += '^';
            out += number_to_string(n.number);
            break;
        case Expr::Kind::binary: {
            const int p = precedence(n);
            const Expr::Node& l = nodes[static_cast<std::size_t>(n.lhs)];
            const Expr::Node& r = nodes[static_cast<std::size_t>(n.rhs)];
            child(n.lhs, precedence(l) < p);
            switch (n.bop) {
                case BinaryOp::add: out += '+'; break;
                case BinaryOp::sub: out += '-'; break;
                case BinaryOp::mul: out += '*'; break;
                case BinaryOp::div: out += '/'; break;
            }
            // -, / are left-associative: parenthesize an equal-precedence rhs
            child(n.rhs, precedence(r) <= p && !(n.bop == BinaryOp::add && precedence(r) > 1) &&
                             !(n.bop == BinaryOp::mul && precedence(r) > 2));
            break;
        }
    }
}

}  // namespace

std::string Expr::to_string() const {
    std::string out;
    print_node(nodes_, root_, out);
    return out;
}

}  // namespace fireline
