#ifndef NIJEX_EXPR_HPP
#define NIJEX_EXPR_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nijex {

using Complex = std::complex<double>;

/* Scalar expression DSL over real chart coordinates x1..xn with complex
 * constants.  Trees are immutable and share subtrees; every operation that
 * produces a new expression returns a new handle.  The node set is closed
 * under differentiation. */

enum class ExprKind : std::uint8_t {
    Const,   // complex literal
    Var,     // coordinate x_i, 1-based index
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    IntPow,  // non-negative integer exponent
    Sin,
    Cos,
    Exp,
};

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    Complex value{0.0, 0.0};  // Const
    int var = 0;              // Var
    int exponent = 0;         // IntPow
    ExprNodePtr a;            // first child
    ExprNodePtr b;            // second child (binary ops)
    int max_var = 0;          // largest Var index in the subtree
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }  // 0-based offset into the source

private:
    std::size_t position_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Expr {
public:
    Expr();  // constant 0

    static Expr constant(Complex v);
    static Expr constant(double re) { return constant(Complex{re, 0.0}); }
    static Expr imaginary_unit() { return constant(Complex{0.0, 1.0}); }
    static Expr variable(int index);  // 1-based, index >= 1

    // Simplifying builders: constant folding plus the local rules
    // 0*e -> 0, 1*e -> e, e+-0 -> e, e/1 -> e, e^0 -> 1, e^1 -> e.
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    static Expr pow_int(const Expr& base, int exponent);  // exponent >= 0
    static Expr sin(const Expr& e);
    static Expr cos(const Expr& e);
    static Expr exp(const Expr& e);

    Expr& operator+=(const Expr& o) { *this = *this + o; return *this; }
    Expr& operator-=(const Expr& o) { *this = *this - o; return *this; }
    Expr& operator*=(const Expr& o) { *this = *this * o; return *this; }

    // Exact symbolic partial derivative with respect to x_index.
    Expr diff(int index) const;

    // One-shot evaluation.  point carries the coordinate values; it must be
    // at least max_var() long.  Throws EvalError on division by a value of
    // modulus < 1e-300 and on non-finite results.
    Complex eval(std::span<const double> point) const;

    int max_var() const { return node_->max_var; }
    bool is_zero() const;                       // syntactic Const 0
    bool is_const(Complex* out = nullptr) const;

    const ExprNode& node() const { return *node_; }
    const ExprNodePtr& ptr() const { return node_; }

private:
    friend class CompiledExpr;
    friend class ExprDetail;
    explicit Expr(ExprNodePtr n) : node_(std::move(n)) {}

    ExprNodePtr node_;
};

/* Parses the grammar
 *   expr   := term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := base ('^' uint)?
 *   base   := number | 'i' | 'x'uint | '(' expr ')'
 *           | ('sin'|'cos'|'exp') '(' expr ')' | '-' base
 * Whitespace-insensitive; 'i' is the imaginary unit.  Variable indices must
 * lie in [1, dim].  Returns the plain grammar tree (no simplification). */
Expr parse(std::string_view src, int dim);

/* Evaluation tape for repeated evaluation of one expression at many points.
 * Shared subtrees are evaluated once per point. */
class CompiledExpr {
public:
    explicit CompiledExpr(const Expr& e);
    Complex eval(std::span<const double> point) const;
    int max_var() const { return max_var_; }

private:
    struct Op {
        ExprKind kind;
        std::int32_t a = -1;
        std::int32_t b = -1;
        int aux = 0;  // Var index or IntPow exponent
        Complex value{0.0, 0.0};
    };
    std::vector<Op> ops_;
    int max_var_ = 0;
    mutable std::vector<Complex> slots_;
};

}  // namespace nijex

#endif
