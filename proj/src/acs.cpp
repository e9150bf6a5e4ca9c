#include "nijex/acs.hpp"

#include <cmath>
#include <stdexcept>

#include "nijex/rng.hpp"

namespace nijex {

AcsField::AcsField(Chart chart, std::vector<std::vector<Expr>> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
    const int n = chart_.dim();
    if (int(entries_.size()) != n)
        throw std::invalid_argument("structure matrix must be n x n");
    for (const auto& row : entries_)
        if (int(row.size()) != n)
            throw std::invalid_argument("structure matrix must be n x n");
}

AcsField AcsField::standard(Chart chart) {
    const int n = chart.dim();
    const std::size_t un = std::size_t(n);
    std::vector<std::vector<Expr>> e(un, std::vector<Expr>(un));
    for (int b = 0; b < n / 2; ++b) {
        e[std::size_t(2 * b)][std::size_t(2 * b + 1)] = Expr::constant(1.0);   // J d_{2b+1} = d_{2b+2}
        e[std::size_t(2 * b + 1)][std::size_t(2 * b)] = Expr::constant(-1.0);  // J d_{2b+2} = -d_{2b+1}
    }
    return AcsField(std::move(chart), std::move(e));
}

namespace {

struct PointResidual {
    double j_squared;
    double trace;
};

PointResidual residual_at(const AcsField& j, std::span<const double> point) {
    const int n = j.dim();
    const std::size_t un = std::size_t(n);
    std::vector<std::vector<Complex>> v(un, std::vector<Complex>(un));
    for (int i = 1; i <= n; ++i)
        for (int r = 1; r <= n; ++r)
            v[std::size_t(i - 1)][std::size_t(r - 1)] = j.entry(i, r).eval(point);
    PointResidual out{0.0, 0.0};
    Complex tr{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        tr += v[std::size_t(i)][std::size_t(i)];
        for (int r = 0; r < n; ++r) {
            Complex acc{0.0, 0.0};
            for (int p = 0; p < n; ++p)
                acc += v[std::size_t(i)][std::size_t(p)] * v[std::size_t(p)][std::size_t(r)];
            if (i == r) acc += Complex{1.0, 0.0};
            out.j_squared = std::max(out.j_squared, std::abs(acc));
        }
    }
    out.trace = std::abs(tr);
    return out;
}

}  // namespace

ValidationReport validate(const AcsField& j,
                          std::span<const std::vector<double>> samples, double tol) {
    if (j.dim() % 2 != 0) throw std::invalid_argument("dimension must be even");
    ValidationReport rep;
    rep.samples = int(samples.size());
    rep.tolerance = tol;
    for (const auto& p : samples) {
        const PointResidual r = residual_at(j, p);
        rep.max_j_squared_residual = std::max(rep.max_j_squared_residual, r.j_squared);
        rep.max_trace_residual = std::max(rep.max_trace_residual, r.trace);
    }
    rep.pass = rep.max_j_squared_residual < tol && rep.max_trace_residual < tol;
    return rep;
}

bool validate_at(const AcsField& j, std::span<const double> point, double tol) {
    try {
        const PointResidual r = residual_at(j, point);
        return r.j_squared < tol && r.trace < tol;
    } catch (const EvalError&) {
        return false;
    }
}

AcsField conjugate_standard(const Chart& chart,
                            const std::vector<std::vector<Expr>>& a,
                            const std::vector<std::vector<Expr>>& a_inv) {
    const int n = chart.dim();
    auto square = [n](const std::vector<std::vector<Expr>>& m) {
        if (int(m.size()) != n) return false;
        for (const auto& row : m)
            if (int(row.size()) != n) return false;
        return true;
    };
    if (!square(a) || !square(a_inv))
        throw std::invalid_argument("conjugation matrices must be n x n");

    // precondition: A * A_inv = I at deterministic samples
    Rng rng(0x9e3779b97f4a7c15ULL);
    const int kSamples = 32;
    const std::size_t un = std::size_t(n);
    for (int s = 0; s < kSamples; ++s) {
        std::vector<double> p(un);
        for (int c = 0; c < n; ++c)
            p[std::size_t(c)] = rng.uniform(chart.box()[std::size_t(c)][0],
                                            chart.box()[std::size_t(c)][1]);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Complex acc{0.0, 0.0};
                for (int k = 0; k < n; ++k)
                    acc += a[std::size_t(r)][std::size_t(k)].eval(p) *
                           a_inv[std::size_t(k)][std::size_t(c)].eval(p);
                if (r == c) acc -= Complex{1.0, 0.0};
                if (std::abs(acc) >= 1e-10)
                    throw std::invalid_argument(
                        "conjugate_standard: A * A_inv is not the identity on the box");
            }
    }

    // column-operator matrix of J0
    std::vector<std::vector<Expr>> j0(un, std::vector<Expr>(un));
    for (int b = 0; b < n / 2; ++b) {
        j0[std::size_t(2 * b + 1)][std::size_t(2 * b)] = Expr::constant(1.0);
        j0[std::size_t(2 * b)][std::size_t(2 * b + 1)] = Expr::constant(-1.0);
    }
    auto matmul = [n, un](const std::vector<std::vector<Expr>>& x,
                          const std::vector<std::vector<Expr>>& y) {
        std::vector<std::vector<Expr>> out(un, std::vector<Expr>(un));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Expr acc;
                for (int k = 0; k < n; ++k)
                    acc += x[std::size_t(r)][std::size_t(k)] * y[std::size_t(k)][std::size_t(c)];
                out[std::size_t(r)][std::size_t(c)] = acc;
            }
        return out;
    };
    const auto c = matmul(matmul(a_inv, j0), a);
    // J_i^r = C[r][i]
    std::vector<std::vector<Expr>> entries(un, std::vector<Expr>(un));
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r)
            entries[std::size_t(i)][std::size_t(r)] = c[std::size_t(r)][std::size_t(i)];
    return AcsField(chart, std::move(entries));
}

VecField j_apply(const AcsField& j, const VecField& x) {
    if (j.dim() != x.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = j.dim();
    VecField out = VecField::zero(n);
    for (int r = 1; r <= n; ++r) {
        Expr acc;
        for (int p = 1; p <= n; ++p) acc += j.entry(p, r) * x.component(p);
        out.set_component(r, acc);
    }
    return out;
}

Form j_form1(const AcsField& j, const Form& z) {
    if (z.degree() != 1) throw std::invalid_argument("j_form1 needs a 1-form");
    if (j.dim() != z.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = j.dim();
    Form out(n, 1);
    for (int i = 1; i <= n; ++i) {
        Expr acc;
        for (int r = 1; r <= n; ++r) {
            const int idx[1] = {r};
            acc += j.entry(i, r) * z.coefficient(idx);
        }
        const int idx[1] = {i};
        out.set_coefficient(idx, acc);
    }
    return out;
}

VecField project_vec(const AcsField& j, const VecField& x, Projection type) {
    const Complex s = (type == Projection::P10) ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
    const VecField jx = j_apply(j, x);
    return x.scaled(Complex{0.5, 0.0}) + jx.scaled(s);
}

Form project_form1(const AcsField& j, const Form& z, Projection type) {
    const Complex s = (type == Projection::P10) ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
    const Form jz = j_form1(j, z);
    return z.scaled(Complex{0.5, 0.0}) + jz.scaled(s);
}

BigradedForm bigrade(const AcsField& j, const Form& a) {
    if (j.dim() != a.dim()) throw std::invalid_argument("dimension mismatch");
    const int n = a.dim();
    const int k = a.degree();
    BigradedForm out(n, k);
    if (k == 0) {
        out.add(0, 0, a);
        return out;
    }
    std::vector<Form> p10, p01;
    p10.reserve(std::size_t(n));
    p01.reserve(std::size_t(n));
    for (int i = 1; i <= n; ++i) {
        p10.push_back(project_form1(j, Form::dx(n, i), Projection::P10));
        p01.push_back(project_form1(j, Form::dx(n, i), Projection::P01));
    }
    for (const auto& [mask, coeff] : a.coefficients()) {
        const std::vector<int> idx = mask_indices(mask);
        for (unsigned choice = 0; choice < (1u << k); ++choice) {
            Form w = Form::scalar(n, coeff);
            int p = 0;
            for (int pos = 0; pos < k; ++pos) {
                const int i = idx[std::size_t(pos)];
                if (choice & (1u << pos)) {
                    w = wedge(w, p01[std::size_t(i - 1)]);
                } else {
                    w = wedge(w, p10[std::size_t(i - 1)]);
                    ++p;
                }
            }
            out.add(p, k - p, w);
        }
    }
    return out;
}

std::pair<int, int> dcomp_shift(DComp c) {
    switch (c) {
        case DComp::Rho: return {2, -1};
        case DComp::Del: return {1, 0};
        case DComp::DelBar: return {0, 1};
        case DComp::RhoBar: return {-1, 2};
    }
    throw std::logic_error("unreachable");
}

Form comp_d(const AcsField& j, const Form& a, DComp component) {
    const auto [s1, s2] = dcomp_shift(component);
    const BigradedForm parts = bigrade(j, a);
    Form out(a.dim(), a.degree() + 1);
    for (const auto& [pq, f] : parts.components()) {
        if (f.empty()) continue;
        const int tp = pq.first + s1;
        const int tq = pq.second + s2;
        if (tp < 0 || tq < 0) continue;
        const BigradedForm dparts = bigrade(j, ext_d(f));
        out = out + dparts.component(tp, tq);
    }
    return out;
}

}  // namespace nijex
