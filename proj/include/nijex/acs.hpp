#ifndef NIJEX_ACS_HPP
#define NIJEX_ACS_HPP

#include <vector>

#include "nijex/calculus.hpp"
#include "nijex/chart.hpp"

namespace nijex {

/* Almost-complex structure on a chart, stored as the n x n table
 * J_i^r = dx^r(J d_i).  The action on vectors is (JX)^r = sum_p J_p^r X^p
 * and on 1-forms (Jz)_i = sum_r J_i^r z_r, so that (Jz)(X) = z(JX). */
class AcsField {
public:
    AcsField(Chart chart, std::vector<std::vector<Expr>> entries);

    // Block-diagonal standard structure: J d_{2k-1} = d_{2k}, J d_{2k} = -d_{2k-1}.
    static AcsField standard(Chart chart);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    const Expr& entry(int i, int r) const {  // 1-based
        return entries_[std::size_t(i - 1)][std::size_t(r - 1)];
    }

private:
    Chart chart_;
    std::vector<std::vector<Expr>> entries_;
};

struct ValidationReport {
    double max_j_squared_residual = 0.0;  // max |J^2 + I| entrywise over samples
    double max_trace_residual = 0.0;      // max |trace J| over samples
    int samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

/* Evaluates |J^2+I| and |trace J| at each sample; pass iff both maxima are
 * below tol.  Throws EvalError when an entry evaluates non-finite. */
ValidationReport validate(const AcsField& j,
                          std::span<const std::vector<double>> samples, double tol);

/* Pointwise check used by samplers: true iff all entries evaluate finite and
 * the residuals at this point are below tol. */
bool validate_at(const AcsField& j, std::span<const double> point, double tol);

/* J = A_inv * J0 * A where A, A_inv are operator matrices acting on column
 * vectors, entry [row][col], both given symbolically.  A*A_inv must evaluate
 * to the identity at the deterministic precondition samples.  The returned
 * field satisfies J^2 = -I identically whenever A*A_inv = I does. */
AcsField conjugate_standard(const Chart& chart,
                            const std::vector<std::vector<Expr>>& a,
                            const std::vector<std::vector<Expr>>& a_inv);

VecField j_apply(const AcsField& j, const VecField& x);
Form j_form1(const AcsField& j, const Form& z);  // degree 1 only

enum class Projection {
    P10,  // pi_{1,0}X = (X - i JX)/2,  pi^{1,0}z = (z - i Jz)/2
    P01,  // pi_{0,1}X = (X + i JX)/2,  pi^{0,1}z = (z + i Jz)/2
};

VecField project_vec(const AcsField& j, const VecField& x, Projection type);
Form project_form1(const AcsField& j, const Form& z, Projection type);

/* Decomposes a form into its (p,q) components by expanding every dx^i as
 * pi^{1,0}dx^i + pi^{0,1}dx^i and collecting by type count.  Coefficients
 * stay symbolic in the entries of J. */
BigradedForm bigrade(const AcsField& j, const Form& a);

/* The four bidegree components of d. */
enum class DComp {
    Rho,     // shift (2,-1)
    Del,     // shift (1,0)
    DelBar,  // shift (0,1)
    RhoBar,  // shift (-1,2)
};

std::pair<int, int> dcomp_shift(DComp c);

/* comp_d(a) = sum over bigrade components (p,q) of a of
 * pi^{(p,q)+shift}(d(pi^{p,q}a)); out-of-range targets contribute zero. */
Form comp_d(const AcsField& j, const Form& a, DComp component);

}  // namespace nijex

#endif
