#ifndef NIJEX_NIJENHUIS_HPP
#define NIJEX_NIJENHUIS_HPP

#include <vector>

#include "nijex/acs.hpp"

namespace nijex {

/* Symbolic coordinate components N_ik^r = dx^r(N(d_i, d_k)).  Antisymmetry
 * in (i,k) holds by construction: entries with i > k share the (i<k) tree
 * through a negation, and the diagonal is the zero expression. */
class NijenhuisComponents {
public:
    explicit NijenhuisComponents(int dim);
    int dim() const { return dim_; }
    const Expr& at(int i, int k, int r) const;  // 1-based
    void set(int i, int k, int r, Expr e);      // also stores -e at (k,i,r)

private:
    int dim_;
    std::vector<Expr> entries_;
};

/* N(X,Y) = [JX,JY] - J[X,JY] - J[JX,Y] - [X,Y]. */
VecField n_def(const AcsField& j, const VecField& x, const VecField& y);

/* Coordinate route:
 * N_ik^r = sum_p J_i^p{d_p J_k^r - d_k J_p^r} - J_k^p{d_p J_i^r - d_i J_p^r}. */
NijenhuisComponents n_coord(const AcsField& j);

/* Strong square N^2(X,Z;Y) = N(N(X,Z),Y); JN^2 is j_apply of the result. */
VecField n_squared(const AcsField& j, const VecField& x, const VecField& z,
                   const VecField& y);

/* K(X,Z,Y,W) = 1/4 { W*([N(X,Z),Y]) + W*([N(Y,Z),X])
 *                  + Z*([N(X,W),Y]) + Z*([N(Y,W),X]) },
 * L the same with J inserted inside every pairing.  The coordinate overloads
 * take X=d_i, Z=d_k, Y=d_j, W=d_l with duals dx^k, dx^l.  No metric is ever
 * introduced: the general overloads require the caller to hand over the dual
 * 1-forms explicitly. */
Expr k_func(const AcsField& j, int i, int k, int jj, int l);
Expr k_func(const AcsField& j, const VecField& x, const VecField& z,
            const VecField& y, const VecField& w, const Form& z_dual,
            const Form& w_dual);
Expr l_func(const AcsField& j, int i, int k, int jj, int l);
Expr l_func(const AcsField& j, const VecField& x, const VecField& z,
            const VecField& y, const VecField& w, const Form& z_dual,
            const Form& w_dual);

/* Intermediate squares on the coordinate frame.
 * hbar(d_i,d_k) = dx^k([N(d_i,d_k), d_i]), which reduces to -d_i N_ik^k;
 * ell(d_i,d_k)  = dx^k(J[N(d_i,d_k), d_i]) = -sum_r (d_i N_ik^r) J_r^k.
 * The *_bracket variants compute the definitional route through n_def and
 * lie_bracket; the plain variants use the fast path through n_coord. */
Expr hbar(const NijenhuisComponents& n, int i, int k);
Expr hbar(const AcsField& j, int i, int k);
Expr hbar_bracket(const AcsField& j, int i, int k);
Expr ell(const NijenhuisComponents& n, const AcsField& j, int i, int k);
Expr ell(const AcsField& j, int i, int k);
Expr ell_bracket(const AcsField& j, int i, int k);

/* S_i = sum_k hbar(d_i,d_k), S = sum_i S_i, T = sum_{i,k} ell(d_i,d_k). */
struct WeakSquares {
    std::vector<Expr> s_i;  // size n, 1-based externally
    Expr s;
    Expr t;
};
WeakSquares weak_squares(const AcsField& j);

}  // namespace nijex

#endif
