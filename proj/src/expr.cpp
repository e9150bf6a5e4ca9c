#include "nijex/expr.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace nijex {

namespace {

ExprNodePtr make_const(Complex v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Const;
    n->value = v;
    return n;
}

ExprNodePtr make_var(int index) {
    if (index < 1) throw std::invalid_argument("variable index must be >= 1");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Var;
    n->var = index;
    n->max_var = index;
    return n;
}

ExprNodePtr make_unary(ExprKind k, ExprNodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->max_var = a->max_var;
    n->a = std::move(a);
    return n;
}

ExprNodePtr make_binary(ExprKind k, ExprNodePtr a, ExprNodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->max_var = std::max(a->max_var, b->max_var);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

ExprNodePtr make_pow(ExprNodePtr a, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::IntPow;
    n->exponent = exponent;
    n->max_var = a->max_var;
    n->a = std::move(a);
    return n;
}

bool node_is_zero(const ExprNodePtr& n) {
    return n->kind == ExprKind::Const && n->value == Complex{0.0, 0.0};
}

bool node_is_one(const ExprNodePtr& n) {
    return n->kind == ExprKind::Const && n->value == Complex{1.0, 0.0};
}

Complex pow_complex(Complex base, int exponent) {
    Complex acc{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) acc *= base;
        base *= base;
        exponent >>= 1;
    }
    return acc;
}

}  // namespace

Expr::Expr() : node_(make_const(Complex{0.0, 0.0})) {}

Expr Expr::constant(Complex v) { return Expr(make_const(v)); }

Expr Expr::variable(int index) { return Expr(make_var(index)); }

bool Expr::is_zero() const { return node_is_zero(node_); }

bool Expr::is_const(Complex* out) const {
    if (node_->kind != ExprKind::Const) return false;
    if (out) *out = node_->value;
    return true;
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.node().kind == ExprKind::Const && b.node().kind == ExprKind::Const)
        return Expr::constant(a.node().value + b.node().value);
    return Expr(make_binary(ExprKind::Add, a.ptr(), b.ptr()));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.node().kind == ExprKind::Const && b.node().kind == ExprKind::Const)
        return Expr::constant(a.node().value - b.node().value);
    if (a.is_zero()) return -b;
    return Expr(make_binary(ExprKind::Sub, a.ptr(), b.ptr()));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr::constant(Complex{0.0, 0.0});
    if (node_is_one(a.ptr())) return b;
    if (node_is_one(b.ptr())) return a;
    if (a.node().kind == ExprKind::Const && b.node().kind == ExprKind::Const)
        return Expr::constant(a.node().value * b.node().value);
    return Expr(make_binary(ExprKind::Mul, a.ptr(), b.ptr()));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (node_is_one(b.ptr())) return a;
    if (a.node().kind == ExprKind::Const && b.node().kind == ExprKind::Const &&
        std::abs(b.node().value) >= 1e-300)
        return Expr::constant(a.node().value / b.node().value);
    return Expr(make_binary(ExprKind::Div, a.ptr(), b.ptr()));
}

Expr Expr::operator-() const {
    if (node_->kind == ExprKind::Const) return constant(-node_->value);
    if (node_->kind == ExprKind::Neg) return Expr(node_->a);
    return Expr(make_unary(ExprKind::Neg, node_));
}

Expr Expr::pow_int(const Expr& base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    if (exponent == 0) return constant(Complex{1.0, 0.0});
    if (exponent == 1) return base;
    if (base.node().kind == ExprKind::Const)
        return constant(pow_complex(base.node().value, exponent));
    return Expr(make_pow(base.ptr(), exponent));
}

Expr Expr::sin(const Expr& e) {
    if (e.node().kind == ExprKind::Const) return constant(std::sin(e.node().value));
    return Expr(make_unary(ExprKind::Sin, e.ptr()));
}

Expr Expr::cos(const Expr& e) {
    if (e.node().kind == ExprKind::Const) return constant(std::cos(e.node().value));
    return Expr(make_unary(ExprKind::Cos, e.ptr()));
}

Expr Expr::exp(const Expr& e) {
    if (e.node().kind == ExprKind::Const) return constant(std::exp(e.node().value));
    return Expr(make_unary(ExprKind::Exp, e.ptr()));
}

// ---------------------------------------------------------------------------
// Differentiation

class ExprDetail {
public:
    static Expr wrap(ExprNodePtr p) { return Expr(std::move(p)); }
};

namespace {

Expr wrap(ExprNodePtr p) { return ExprDetail::wrap(std::move(p)); }

class Differ {
public:
    explicit Differ(int var) : var_(var) {}

    Expr run(const ExprNodePtr& n) {
        if (n->max_var < var_) return Expr::constant(0.0);
        auto it = memo_.find(n.get());
        if (it != memo_.end()) return it->second;
        Expr d = derive(n);
        memo_.emplace(n.get(), d);
        return d;
    }

private:
    Expr derive(const ExprNodePtr& n) {
        switch (n->kind) {
            case ExprKind::Const:
                return Expr::constant(0.0);
            case ExprKind::Var:
                return Expr::constant(n->var == var_ ? 1.0 : 0.0);
            case ExprKind::Neg:
                return -run(n->a);
            case ExprKind::Add:
                return run(n->a) + run(n->b);
            case ExprKind::Sub:
                return run(n->a) - run(n->b);
            case ExprKind::Mul:
                return run(n->a) * wrap(n->b) + wrap(n->a) * run(n->b);
            case ExprKind::Div:
                return (run(n->a) * wrap(n->b) - wrap(n->a) * run(n->b)) /
                       Expr::pow_int(wrap(n->b), 2);
            case ExprKind::IntPow:
                if (n->exponent == 0) return Expr::constant(0.0);
                return Expr::constant(double(n->exponent)) *
                       Expr::pow_int(wrap(n->a), n->exponent - 1) * run(n->a);
            case ExprKind::Sin:
                return Expr::cos(wrap(n->a)) * run(n->a);
            case ExprKind::Cos:
                return -(Expr::sin(wrap(n->a)) * run(n->a));
            case ExprKind::Exp:
                return Expr::exp(wrap(n->a)) * run(n->a);
        }
        throw std::logic_error("unreachable expression kind");
    }

    int var_;
    std::unordered_map<const ExprNode*, Expr> memo_;
};

}  // namespace

Expr Expr::diff(int index) const {
    if (index < 1) throw std::invalid_argument("derivative index must be >= 1");
    Differ d(index);
    return d.run(node_);
}

// ---------------------------------------------------------------------------
// Compilation and evaluation

CompiledExpr::CompiledExpr(const Expr& e) {
    std::unordered_map<const ExprNode*, std::int32_t> index;
    struct Frame {
        const ExprNode* node;
        bool expanded;
    };
    std::vector<Frame> stack;
    stack.push_back({e.ptr().get(), false});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (index.count(f.node)) continue;
        if (!f.expanded) {
            stack.push_back({f.node, true});
            if (f.node->b) stack.push_back({f.node->b.get(), false});
            if (f.node->a) stack.push_back({f.node->a.get(), false});
            continue;
        }
        Op op;
        op.kind = f.node->kind;
        op.value = f.node->value;
        op.aux = f.node->kind == ExprKind::Var ? f.node->var : f.node->exponent;
        if (f.node->a) op.a = index.at(f.node->a.get());
        if (f.node->b) op.b = index.at(f.node->b.get());
        index.emplace(f.node, std::int32_t(ops_.size()));
        ops_.push_back(op);
    }
    max_var_ = e.max_var();
    slots_.resize(ops_.size());
}

Complex CompiledExpr::eval(std::span<const double> point) const {
    if (int(point.size()) < max_var_)
        throw EvalError("evaluation point has fewer coordinates than the expression uses");
    auto& s = slots_;
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        const Op& op = ops_[k];
        switch (op.kind) {
            case ExprKind::Const: s[k] = op.value; break;
            case ExprKind::Var: s[k] = Complex{point[std::size_t(op.aux) - 1], 0.0}; break;
            case ExprKind::Neg: s[k] = -s[op.a]; break;
            case ExprKind::Add: s[k] = s[op.a] + s[op.b]; break;
            case ExprKind::Sub: s[k] = s[op.a] - s[op.b]; break;
            case ExprKind::Mul: s[k] = s[op.a] * s[op.b]; break;
            case ExprKind::Div: {
                const Complex den = s[op.b];
                if (std::abs(den) < 1e-300) throw EvalError("division by zero");
                s[k] = s[op.a] / den;
                break;
            }
            case ExprKind::IntPow: s[k] = pow_complex(s[op.a], op.aux); break;
            case ExprKind::Sin: s[k] = std::sin(s[op.a]); break;
            case ExprKind::Cos: s[k] = std::cos(s[op.a]); break;
            case ExprKind::Exp: s[k] = std::exp(s[op.a]); break;
        }
    }
    const Complex r = s[ops_.size() - 1];
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw EvalError("non-finite evaluation result");
    return r;
}

Complex Expr::eval(std::span<const double> point) const {
    return CompiledExpr(*this).eval(point);
}

// ---------------------------------------------------------------------------
// Parser (recursive descent over the published grammar; builds raw nodes)

namespace {

class Parser {
public:
    Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

    Expr run() {
        ExprNodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return wrap(std::move(e));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprNodePtr parse_expr() {
        ExprNodePtr e = parse_term();
        for (;;) {
            if (eat('+')) e = make_binary(ExprKind::Add, e, parse_term());
            else if (eat('-')) e = make_binary(ExprKind::Sub, e, parse_term());
            else return e;
        }
    }

    ExprNodePtr parse_term() {
        ExprNodePtr e = parse_factor();
        for (;;) {
            if (eat('*')) e = make_binary(ExprKind::Mul, e, parse_factor());
            else if (eat('/')) e = make_binary(ExprKind::Div, e, parse_factor());
            else return e;
        }
    }

    ExprNodePtr parse_factor() {
        ExprNodePtr e = parse_base();
        if (eat('^')) {
            skip_ws();
            if (peek() == '-') fail("negative exponent");
            return make_pow(std::move(e), parse_uint("exponent"));
        }
        return e;
    }

    ExprNodePtr parse_base() {
        const char c = peek();
        if (c == '\0') fail("unexpected end of input");
        if (c == '-') {
            ++pos_;
            return make_unary(ExprKind::Neg, parse_base());
        }
        if (c == '(') {
            ++pos_;
            ExprNodePtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        fail(std::string("unexpected character '") + c + "'");
    }

    int parse_uint(const char* what) {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail(std::string("expected ") + what);
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000) fail(std::string(what) + " too large");
            ++pos_;
        }
        return int(v);
    }

    ExprNodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.')) fail("malformed number");
        // exponent part, only when unambiguous
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                ++p;
                while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
                pos_ = p;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        return make_const(Complex{std::strtod(text.c_str(), nullptr), 0.0});
    }

    ExprNodePtr parse_word() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view word = src_.substr(start, pos_ - start);
        if (word == "i") return make_const(Complex{0.0, 1.0});
        if (word == "x") {
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                pos_ = start;
                fail("expected variable index after 'x'");
            }
            const std::size_t at = start;
            const int idx = parse_uint("variable index");
            if (idx < 1 || idx > dim_) {
                pos_ = at;
                fail("variable index out of range (dim = " + std::to_string(dim_) + ")");
            }
            return make_var(idx);
        }
        if (word == "sin" || word == "cos" || word == "exp") {
            if (!eat('(')) fail("expected '(' after function name");
            ExprNodePtr arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            const ExprKind k = word == "sin" ? ExprKind::Sin
                             : word == "cos" ? ExprKind::Cos
                                             : ExprKind::Exp;
            return make_unary(k, std::move(arg));
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
    }

    std::string_view src_;
    int dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view src, int dim) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    Parser p(src, dim);
    return p.run();
}

}  // namespace nijex
