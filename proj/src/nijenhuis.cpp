#include "nijex/nijenhuis.hpp"

#include <stdexcept>

namespace nijex {

NijenhuisComponents::NijenhuisComponents(int dim)
    : dim_(dim), entries_(std::size_t(dim) * std::size_t(dim) * std::size_t(dim)) {}

const Expr& NijenhuisComponents::at(int i, int k, int r) const {
    if (i < 1 || i > dim_ || k < 1 || k > dim_ || r < 1 || r > dim_)
        throw std::out_of_range("Nijenhuis component index out of range");
    return entries_[std::size_t(((i - 1) * dim_ + (k - 1)) * dim_ + (r - 1))];
}

void NijenhuisComponents::set(int i, int k, int r, Expr e) {
    if (i < 1 || i > dim_ || k < 1 || k > dim_ || r < 1 || r > dim_)
        throw std::out_of_range("Nijenhuis component index out of range");
    if (i == k) return;  // diagonal stays the zero expression
    entries_[std::size_t(((i - 1) * dim_ + (k - 1)) * dim_ + (r - 1))] = e;
    entries_[std::size_t(((k - 1) * dim_ + (i - 1)) * dim_ + (r - 1))] = -e;
}

VecField n_def(const AcsField& j, const VecField& x, const VecField& y) {
    if (j.dim() != x.dim() || j.dim() != y.dim())
        throw std::invalid_argument("dimension mismatch");
    const VecField jx = j_apply(j, x);
    const VecField jy = j_apply(j, y);
    return lie_bracket(jx, jy) - j_apply(j, lie_bracket(x, jy)) -
           j_apply(j, lie_bracket(jx, y)) - lie_bracket(x, y);
}

NijenhuisComponents n_coord(const AcsField& j) {
    const int n = j.dim();
    NijenhuisComponents out(n);
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k)
            for (int r = 1; r <= n; ++r) {
                Expr acc;
                for (int p = 1; p <= n; ++p)
                    acc += j.entry(i, p) * (j.entry(k, r).diff(p) - j.entry(p, r).diff(k)) -
                           j.entry(k, p) * (j.entry(i, r).diff(p) - j.entry(p, r).diff(i));
                out.set(i, k, r, acc);
            }
    return out;
}

VecField n_squared(const AcsField& j, const VecField& x, const VecField& z,
                   const VecField& y) {
    return n_def(j, n_def(j, x, z), y);
}

namespace {

// dx^r([N(d_a,d_b), d_c]) = -d_c(N_ab^r) with N from the bracket route
Expr bracket_component(const AcsField& j, int a, int b, int c, int r,
                       bool insert_j) {
    const int n = j.dim();
    const VecField nab =
        n_def(j, VecField::coordinate(n, a), VecField::coordinate(n, b));
    const VecField br = lie_bracket(nab, VecField::coordinate(n, c));
    if (!insert_j) return br.component(r);
    return j_apply(j, br).component(r);
}

Expr four_term(const AcsField& j, int i, int k, int jj, int l, bool insert_j) {
    const int n = j.dim();
    for (int v : {i, k, jj, l})
        if (v < 1 || v > n) throw std::out_of_range("coordinate index out of range");
    const Expr quarter = Expr::constant(0.25);
    return quarter * (bracket_component(j, i, k, jj, l, insert_j) +
                      bracket_component(j, jj, k, i, l, insert_j) +
                      bracket_component(j, i, l, jj, k, insert_j) +
                      bracket_component(j, jj, l, i, k, insert_j));
}

Expr four_term_general(const AcsField& j, const VecField& x, const VecField& z,
                       const VecField& y, const VecField& w, const Form& z_dual,
                       const Form& w_dual, bool insert_j) {
    auto term = [&](const Form& dual, const VecField& a, const VecField& b,
                    const VecField& c) {
        VecField br = lie_bracket(n_def(j, a, b), c);
        if (insert_j) br = j_apply(j, br);
        return pair_form1(dual, br);
    };
    const Expr quarter = Expr::constant(0.25);
    return quarter * (term(w_dual, x, z, y) + term(w_dual, y, z, x) +
                      term(z_dual, x, w, y) + term(z_dual, y, w, x));
}

}  // namespace

Expr k_func(const AcsField& j, int i, int k, int jj, int l) {
    return four_term(j, i, k, jj, l, false);
}

Expr l_func(const AcsField& j, int i, int k, int jj, int l) {
    return four_term(j, i, k, jj, l, true);
}

Expr k_func(const AcsField& j, const VecField& x, const VecField& z,
            const VecField& y, const VecField& w, const Form& z_dual,
            const Form& w_dual) {
    return four_term_general(j, x, z, y, w, z_dual, w_dual, false);
}

Expr l_func(const AcsField& j, const VecField& x, const VecField& z,
            const VecField& y, const VecField& w, const Form& z_dual,
            const Form& w_dual) {
    return four_term_general(j, x, z, y, w, z_dual, w_dual, true);
}

Expr hbar(const NijenhuisComponents& n, int i, int k) {
    return -n.at(i, k, k).diff(i);
}

Expr hbar(const AcsField& j, int i, int k) { return hbar(n_coord(j), i, k); }

Expr hbar_bracket(const AcsField& j, int i, int k) {
    const int n = j.dim();
    const VecField nik =
        n_def(j, VecField::coordinate(n, i), VecField::coordinate(n, k));
    return lie_bracket(nik, VecField::coordinate(n, i)).component(k);
}

Expr ell(const NijenhuisComponents& n, const AcsField& j, int i, int k) {
    Expr acc;
    for (int r = 1; r <= n.dim(); ++r) acc += n.at(i, k, r).diff(i) * j.entry(r, k);
    return -acc;
}

Expr ell(const AcsField& j, int i, int k) { return ell(n_coord(j), j, i, k); }

Expr ell_bracket(const AcsField& j, int i, int k) {
    const int n = j.dim();
    const VecField nik =
        n_def(j, VecField::coordinate(n, i), VecField::coordinate(n, k));
    return j_apply(j, lie_bracket(nik, VecField::coordinate(n, i))).component(k);
}

WeakSquares weak_squares(const AcsField& j) {
    const int n = j.dim();
    const NijenhuisComponents nc = n_coord(j);
    WeakSquares out;
    out.s_i.resize(std::size_t(n));
    for (int i = 1; i <= n; ++i) {
        Expr si;
        for (int k = 1; k <= n; ++k) si += hbar(nc, i, k);
        out.s_i[std::size_t(i - 1)] = si;
        out.s += si;
        for (int k = 1; k <= n; ++k) out.t += ell(nc, j, i, k);
    }
    return out;
}

}  // namespace nijex
