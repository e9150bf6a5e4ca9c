#include "nijex/calculus.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace nijex {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > 62) throw std::invalid_argument("unsupported chart dimension");
}

void check_index(int i, int dim) {
    if (i < 1 || i > dim) throw std::out_of_range("coordinate index out of range");
}

}  // namespace

// ---------------------------------------------------------------------------
// VecField

VecField::VecField(int dim, std::vector<Expr> components)
    : dim_(dim), comp_(std::move(components)) {
    check_dim(dim);
    if (int(comp_.size()) != dim)
        throw std::invalid_argument("vector field must have one component per coordinate");
}

VecField VecField::zero(int dim) {
    return VecField(dim, std::vector<Expr>(std::size_t(dim)));
}

VecField VecField::coordinate(int dim, int i) {
    check_index(i, dim);
    VecField v = zero(dim);
    v.set_component(i, Expr::constant(1.0));
    return v;
}

std::vector<Complex> VecField::eval(std::span<const double> point) const {
    std::vector<Complex> out(comp_.size());
    for (std::size_t r = 0; r < comp_.size(); ++r) out[r] = comp_[r].eval(point);
    return out;
}

VecField operator+(const VecField& a, const VecField& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("vector field dimension mismatch");
    VecField out = VecField::zero(a.dim_);
    for (int r = 1; r <= a.dim_; ++r)
        out.set_component(r, a.component(r) + b.component(r));
    return out;
}

VecField operator-(const VecField& a, const VecField& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("vector field dimension mismatch");
    VecField out = VecField::zero(a.dim_);
    for (int r = 1; r <= a.dim_; ++r)
        out.set_component(r, a.component(r) - b.component(r));
    return out;
}

VecField VecField::scaled(const Expr& f) const {
    VecField out = zero(dim_);
    for (int r = 1; r <= dim_; ++r) out.set_component(r, f * component(r));
    return out;
}

// ---------------------------------------------------------------------------
// Index masks

IndexMask mask_from_indices(std::span<const int> indices) {
    IndexMask m = 0;
    int prev = 0;
    for (int i : indices) {
        if (i < 1 || i > 62) throw std::out_of_range("form index out of range");
        if (i <= prev) throw std::invalid_argument("form indices must be strictly increasing");
        m |= IndexMask(1) << (i - 1);
        prev = i;
    }
    return m;
}

std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    for (int i = 1; m != 0; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

int mask_size(IndexMask m) { return std::popcount(m); }

int merge_sign(IndexMask a, IndexMask b) {
    if (a & b) return 0;
    // number of transpositions to interleave b's indices into a
    int inversions = 0;
    IndexMask bb = b;
    while (bb != 0) {
        const IndexMask low = bb & (~bb + 1);
        inversions += std::popcount(a & ~(low - 1) & ~low);
        bb ^= low;
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Form

Form::Form(int dim, int degree) : dim_(dim), degree_(degree) {
    check_dim(dim);
    if (degree < 0) throw std::invalid_argument("form degree must be non-negative");
}

Form Form::dx(int dim, int i) {
    check_index(i, dim);
    Form f(dim, 1);
    const int idx[1] = {i};
    f.set_coefficient(idx, Expr::constant(1.0));
    return f;
}

Form Form::scalar(int dim, Expr f) {
    Form out(dim, 0);
    out.set_coefficient({}, std::move(f));
    return out;
}

Expr Form::coefficient(IndexMask m) const {
    auto it = coeff_.find(m);
    return it == coeff_.end() ? Expr() : it->second;
}

Expr Form::coefficient(std::span<const int> indices) const {
    return coefficient(mask_from_indices(indices));
}

void Form::insert(IndexMask m, const Expr& e) {
    if (mask_size(m) != degree_)
        throw std::invalid_argument("coefficient tuple size does not match form degree");
    for (int i : mask_indices(m)) check_index(i, dim_);
    if (e.is_zero()) {
        coeff_.erase(m);
        return;
    }
    coeff_[m] = e;
}

void Form::set_coefficient(std::span<const int> indices, Expr e) {
    insert(mask_from_indices(indices), e);
}

void Form::add_term(IndexMask m, const Expr& e) {
    auto it = coeff_.find(m);
    Expr sum = (it == coeff_.end()) ? e : it->second + e;
    insert(m, sum);
}

void Form::add_term(std::span<const int> indices, const Expr& e) {
    // sort, tracking the permutation sign; repeated index kills the term
    std::vector<int> idx(indices.begin(), indices.end());
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return;
            if (idx[a] > idx[b]) {
                std::swap(idx[a], idx[b]);
                sign = -sign;
            }
        }
    add_term(mask_from_indices(idx), sign == 1 ? e : -e);
}

Form operator+(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
        throw std::invalid_argument("form shape mismatch");
    Form out = a;
    for (const auto& [m, e] : b.coeff_) out.add_term(m, e);
    return out;
}

Form operator-(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
        throw std::invalid_argument("form shape mismatch");
    Form out = a;
    for (const auto& [m, e] : b.coeff_) out.add_term(m, -e);
    return out;
}

Form Form::scaled(const Expr& f) const {
    Form out(dim_, degree_);
    for (const auto& [m, e] : coeff_) out.insert(m, f * e);
    return out;
}

// ---------------------------------------------------------------------------
// BigradedForm

Form BigradedForm::component(int p, int q) const {
    auto it = comps_.find({p, q});
    return it == comps_.end() ? Form(dim_, degree_) : it->second;
}

void BigradedForm::add(int p, int q, const Form& f) {
    if (p < 0 || q < 0 || p + q != degree_)
        throw std::invalid_argument("bigrade (p,q) must be non-negative with p+q = degree");
    auto it = comps_.find({p, q});
    if (it == comps_.end())
        comps_.emplace(std::make_pair(p, q), f);
    else
        it->second = it->second + f;
}

// ---------------------------------------------------------------------------
// Operations

VecField lie_bracket(const VecField& x, const VecField& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("vector field dimension mismatch");
    const int n = x.dim();
    VecField out = VecField::zero(n);
    for (int r = 1; r <= n; ++r) {
        Expr acc;
        for (int p = 1; p <= n; ++p)
            acc += x.component(p) * y.component(r).diff(p) -
                   y.component(p) * x.component(r).diff(p);
        out.set_component(r, acc);
    }
    return out;
}

Form wedge(const Form& a, const Form& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("form dimension mismatch");
    Form out(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return out;  // identically zero
    for (const auto& [ma, ea] : a.coefficients())
        for (const auto& [mb, eb] : b.coefficients()) {
            const int s = merge_sign(ma, mb);
            if (s == 0) continue;
            out.add_term(ma | mb, s == 1 ? ea * eb : -(ea * eb));
        }
    return out;
}

Form ext_d(const Form& a) {
    if (a.degree() >= a.dim())
        throw std::invalid_argument("exterior derivative of a top-degree form");
    const int n = a.dim();
    Form out(n, a.degree() + 1);
    for (const auto& [m, e] : a.coefficients())
        for (int i = 1; i <= n; ++i) {
            const IndexMask mi = IndexMask(1) << (i - 1);
            if (m & mi) continue;
            Expr de = e.diff(i);
            if (de.is_zero()) continue;
            const int s = merge_sign(mi, m);
            out.add_term(mi | m, s == 1 ? de : -de);
        }
    return out;
}

Form interior(const VecField& y, const Form& a) {
    if (y.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
    if (a.degree() < 1)
        throw std::invalid_argument("interior product needs a form of degree >= 1");
    Form out(a.dim(), a.degree() - 1);
    for (const auto& [m, e] : a.coefficients()) {
        int pos = 0;
        for (int i : mask_indices(m)) {
            const Expr term = y.component(i) * e;
            out.add_term(m & ~(IndexMask(1) << (i - 1)), (pos % 2 == 0) ? term : -term);
            ++pos;
        }
    }
    return out;
}

namespace {

Complex det_complex(std::vector<std::vector<Complex>>& m, int size) {
    // Laplace expansion; sizes here are tiny (<= chart dimension).
    if (size == 0) return Complex{1.0, 0.0};
    if (size == 1) return m[0][0];
    if (size == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Complex acc{0.0, 0.0};
    std::vector<std::vector<Complex>> sub(std::size_t(size - 1),
                                          std::vector<Complex>(std::size_t(size - 1)));
    for (int c = 0; c < size; ++c) {
        for (int r = 1; r < size; ++r) {
            int cc = 0;
            for (int k = 0; k < size; ++k) {
                if (k == c) continue;
                sub[std::size_t(r - 1)][std::size_t(cc++)] = m[std::size_t(r)][std::size_t(k)];
            }
        }
        const Complex term = m[0][std::size_t(c)] * det_complex(sub, size - 1);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

Complex eval_form(const Form& a, std::span<const VecField> vectors,
                  std::span<const double> point) {
    if (int(vectors.size()) != a.degree())
        throw std::invalid_argument("eval_form arity does not match form degree");
    for (const VecField& v : vectors)
        if (v.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
    const int k = a.degree();
    const std::size_t uk = std::size_t(k);
    std::vector<std::vector<Complex>> vals(vectors.size());
    for (std::size_t b = 0; b < vectors.size(); ++b) vals[b] = vectors[b].eval(point);
    Complex acc{0.0, 0.0};
    std::vector<std::vector<Complex>> m(uk, std::vector<Complex>(uk));
    for (const auto& [mask, e] : a.coefficients()) {
        const std::vector<int> idx = mask_indices(mask);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                m[std::size_t(r)][std::size_t(c)] = vals[std::size_t(c)][std::size_t(idx[std::size_t(r)] - 1)];
        acc += e.eval(point) * det_complex(m, k);
    }
    return acc;
}

Expr pair_form1(const Form& a, const VecField& x) {
    if (a.degree() != 1) throw std::invalid_argument("pair_form1 needs a 1-form");
    if (a.dim() != x.dim()) throw std::invalid_argument("dimension mismatch");
    Expr acc;
    for (const auto& [m, e] : a.coefficients()) acc += e * x.component(mask_indices(m)[0]);
    return acc;
}

namespace {

// symbolic determinant by permutation expansion (degrees used are small)
Expr det_expr(const std::vector<std::vector<Expr>>& m) {
    const int k = int(m.size());
    if (k == 0) return Expr::constant(1.0);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[std::size_t(i)] = i;
    Expr acc;
    int sign;
    do {
        sign = 1;
        for (std::size_t a = 0; a < perm.size(); ++a)
            for (std::size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) sign = -sign;
        Expr prod = Expr::constant(1.0);
        for (int r = 0; r < k; ++r) prod *= m[std::size_t(r)][std::size_t(perm[std::size_t(r)])];
        acc += sign == 1 ? prod : -prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace

Expr pair_form(const Form& a, std::span<const VecField> vectors) {
    if (int(vectors.size()) != a.degree())
        throw std::invalid_argument("pair_form arity does not match form degree");
    for (const VecField& v : vectors)
        if (v.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
    const int k = a.degree();
    const std::size_t uk = std::size_t(k);
    if (k == 0) return a.coefficient(IndexMask(0));
    Expr acc;
    std::vector<std::vector<Expr>> m(uk, std::vector<Expr>(uk));
    for (const auto& [mask, e] : a.coefficients()) {
        const std::vector<int> idx = mask_indices(mask);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                m[std::size_t(r)][std::size_t(c)] = vectors[std::size_t(c)].component(idx[std::size_t(r)]);
        acc += e * det_expr(m);
    }
    return acc;
}

}  // namespace nijex
