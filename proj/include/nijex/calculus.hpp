#ifndef NIJEX_CALCULUS_HPP
#define NIJEX_CALCULUS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "nijex/expr.hpp"

namespace nijex {

/* Chart-level exterior calculus.  All indices in the public surface are
 * 1-based, matching the coordinate names x1..xn and the duals dx^1..dx^n. */

class VecField {
public:
    VecField(int dim, std::vector<Expr> components);
    static VecField zero(int dim);
    static VecField coordinate(int dim, int i);  // the frame field for x_i

    int dim() const { return dim_; }
    const Expr& component(int r) const { return comp_[std::size_t(r - 1)]; }
    void set_component(int r, Expr e) { comp_[std::size_t(r - 1)] = std::move(e); }

    std::vector<Complex> eval(std::span<const double> point) const;

    friend VecField operator+(const VecField& a, const VecField& b);
    friend VecField operator-(const VecField& a, const VecField& b);
    VecField scaled(const Expr& f) const;
    VecField scaled(Complex c) const { return scaled(Expr::constant(c)); }

private:
    int dim_;
    std::vector<Expr> comp_;
};

/* Key of a form coefficient: a strictly increasing index tuple stored as a
 * bitmask over {1..n} (bit i-1 set <=> index i present). */
using IndexMask = std::uint64_t;

IndexMask mask_from_indices(std::span<const int> indices);  // must be strictly increasing
std::vector<int> mask_indices(IndexMask m);
int mask_size(IndexMask m);

/* Sign of dx^A ∧ dx^B -> dx^{A∪B} reordering; 0 when A and B intersect. */
int merge_sign(IndexMask a, IndexMask b);

class Form {
public:
    Form(int dim, int degree);
    static Form dx(int dim, int i);          // basis 1-form
    static Form scalar(int dim, Expr f);     // degree 0

    int dim() const { return dim_; }
    int degree() const { return degree_; }

    // Coefficient on a strictly increasing tuple; zero expression if absent.
    Expr coefficient(std::span<const int> indices) const;
    Expr coefficient(IndexMask m) const;
    void set_coefficient(std::span<const int> indices, Expr e);
    // Adds sign(permutation)*e on the sorted tuple; indices need not be sorted.
    void add_term(std::span<const int> indices, const Expr& e);
    void add_term(IndexMask m, const Expr& e);

    const std::map<IndexMask, Expr>& coefficients() const { return coeff_; }
    bool empty() const { return coeff_.empty(); }

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    Form scaled(const Expr& f) const;
    Form scaled(Complex c) const { return scaled(Expr::constant(c)); }

private:
    void insert(IndexMask m, const Expr& e);

    int dim_;
    int degree_;
    std::map<IndexMask, Expr> coeff_;
};

/* Bigraded decomposition of a degree-k form: (p,q) with p+q=k mapped to the
 * component form.  Missing components are zero. */
class BigradedForm {
public:
    BigradedForm(int dim, int degree) : dim_(dim), degree_(degree) {}

    int dim() const { return dim_; }
    int degree() const { return degree_; }

    Form component(int p, int q) const;
    void add(int p, int q, const Form& f);
    const std::map<std::pair<int, int>, Form>& components() const { return comps_; }

private:
    int dim_;
    int degree_;
    std::map<std::pair<int, int>, Form> comps_;
};

/* [X,Y]^r = sum_p X^p d_p Y^r - Y^p d_p X^r */
VecField lie_bracket(const VecField& x, const VecField& y);

Form wedge(const Form& a, const Form& b);

/* d(a_I dx^I) = sum_i d_i(a_I) dx^i ∧ dx^I.  Degree-n input is rejected. */
Form ext_d(const Form& a);

/* (ι(Y)a)(v_2,..,v_k) = a(Y,v_2,..,v_k).  Degree-0 input is rejected. */
Form interior(const VecField& y, const Form& a);

/* Full antisymmetric pairing dx^K(v_1..v_k) = det[(v_b)^{K_a}], evaluated. */
Complex eval_form(const Form& a, std::span<const VecField> vectors,
                  std::span<const double> point);

/* Symbolic pairings (same convention as eval_form, result as an Expr). */
Expr pair_form1(const Form& a, const VecField& x);  // degree 1 only
Expr pair_form(const Form& a, std::span<const VecField> vectors);

}  // namespace nijex

#endif
