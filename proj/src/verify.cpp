#include "nijex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace nijex {

// ---------------------------------------------------------------------------
// Seeded test data

Expr random_polynomial(Rng& rng, int dim, int degree) {
    // monomial exponent tuples enumerated in a fixed recursive order
    Expr acc;
    std::vector<int> exps(std::size_t(dim), 0);
    std::function<void(int, int)> walk = [&](int var, int remaining) {
        if (var > dim) {
            Expr mono = Expr::constant(rng.uniform(-1.0, 1.0));
            for (int v = 1; v <= dim; ++v)
                if (exps[std::size_t(v - 1)] > 0)
                    mono *= Expr::pow_int(Expr::variable(v), exps[std::size_t(v - 1)]);
            acc += mono;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            exps[std::size_t(var - 1)] = e;
            walk(var + 1, remaining - e);
        }
        exps[std::size_t(var - 1)] = 0;
    };
    walk(1, degree);
    return acc;
}

VecField random_field(Rng& rng, int dim, int degree) {
    std::vector<Expr> comps;
    comps.reserve(std::size_t(dim));
    for (int r = 0; r < dim; ++r) comps.push_back(random_polynomial(rng, dim, degree));
    return VecField(dim, std::move(comps));
}

Form random_1form(Rng& rng, int dim, int degree) {
    Form f(dim, 1);
    for (int i = 1; i <= dim; ++i) {
        const int idx[1] = {i};
        f.set_coefficient(idx, random_polynomial(rng, dim, degree));
    }
    return f;
}

Form random_form(Rng& rng, int dim, int form_degree, int poly_degree) {
    Form f(dim, form_degree);
    // ascending-mask order over all increasing tuples of the right size
    for (IndexMask m = 0; m < (IndexMask(1) << dim); ++m) {
        if (mask_size(m) != form_degree) continue;
        f.add_term(m, random_polynomial(rng, dim, poly_degree));
    }
    return f;
}

std::vector<std::vector<double>> sample_points(Rng& rng, const AcsField& j,
                                               const SuiteConfig& config,
                                               int count) {
    const auto& box = config.box.empty() ? j.chart().box() : config.box;
    if (int(box.size()) != j.dim())
        throw std::invalid_argument("sampling box dimension mismatch");
    std::vector<std::vector<double>> pts;
    pts.reserve(std::size_t(count));
    long attempts = 0;
    const long cap = 1000L * count;
    while (int(pts.size()) < count) {
        if (++attempts > cap)
            throw std::runtime_error(
                "could not sample enough points passing structure validation");
        std::vector<double> p(std::size_t(j.dim()));
        for (int c = 0; c < j.dim(); ++c)
            p[std::size_t(c)] = rng.uniform(box[std::size_t(c)][0], box[std::size_t(c)][1]);
        if (validate_at(j, p, j.chart().tolerance())) pts.push_back(std::move(p));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Identity machinery

namespace {

struct ScalarCheck {
    Expr lhs;
    Expr rhs;
};

struct Ctx {
    const AcsField& j;
    const SuiteConfig& cfg;
    bool integrable;
};

Expr cmul(Complex c, const Expr& e) { return Expr::constant(c) * e; }

void form_checks(std::vector<ScalarCheck>& out, const Form& lhs, const Form& rhs) {
    std::map<IndexMask, int> keys;
    for (const auto& [m, e] : lhs.coefficients()) keys[m] = 1;
    for (const auto& [m, e] : rhs.coefficients()) keys[m] = 1;
    for (const auto& [m, unused] : keys)
        out.push_back({lhs.coefficient(m), rhs.coefficient(m)});
}

Expr form2_on_coords(const Form& f, int u, int v) {
    if (u == v) return Expr();
    const int lo = std::min(u, v), hi = std::max(u, v);
    const int idx[2] = {lo, hi};
    const Expr c = f.coefficient(idx);
    return u < v ? c : -c;
}

// --- per-identity builders ------------------------------------------------

std::vector<ScalarCheck> build_l21(const Ctx& c, Rng& rng) {
    const int n = c.j.dim();
    const VecField x = random_field(rng, n, c.cfg.field_degree);
    const VecField y = random_field(rng, n, c.cfg.field_degree);
    const VecField nxy = n_def(c.j, x, y);
    std::vector<ScalarCheck> out;
    const VecField b10 = lie_bracket(project_vec(c.j, x, Projection::P10),
                                     project_vec(c.j, y, Projection::P10));
    const VecField lhs1 = project_vec(c.j, b10, Projection::P01);
    const VecField rhs1 = project_vec(c.j, nxy, Projection::P01).scaled(Complex{-0.25, 0.0});
    const VecField b01 = lie_bracket(project_vec(c.j, x, Projection::P01),
                                     project_vec(c.j, y, Projection::P01));
    const VecField lhs2 = project_vec(c.j, b01, Projection::P10);
    const VecField rhs2 = project_vec(c.j, nxy, Projection::P10).scaled(Complex{-0.25, 0.0});
    for (int r = 1; r <= n; ++r) {
        out.push_back({lhs1.component(r), rhs1.component(r)});
        out.push_back({lhs2.component(r), rhs2.component(r)});
    }
    return out;
}

std::vector<ScalarCheck> build_l22(const Ctx& c, Rng& rng, char variant) {
    const int n = c.j.dim();
    std::vector<ScalarCheck> out;
    if (variant == 'a' || variant == 'b') {
        const Expr f = random_polynomial(rng, n, c.cfg.field_degree);
        const VecField x = random_field(rng, n, c.cfg.field_degree);
        const VecField y = random_field(rng, n, c.cfg.field_degree);
        const VecField nxy = n_def(c.j, x, y);
        const Form f0 = Form::scalar(n, f);
        const Form del_f = comp_d(c.j, f0, DComp::Del);
        const Form dbar_f = comp_d(c.j, f0, DComp::DelBar);
        const VecField vecs[2] = {x, y};
        if (variant == 'a') {
            const Form d2f = comp_d(c.j, del_f, DComp::Del);
            out.push_back({pair_form1(dbar_f, nxy), cmul(-4.0, pair_form(d2f, vecs))});
        } else {
            const Form db2f = comp_d(c.j, dbar_f, DComp::DelBar);
            out.push_back({pair_form1(del_f, nxy), cmul(-4.0, pair_form(db2f, vecs))});
        }
        return out;
    }
    const Form zeta = random_1form(rng, n, c.cfg.field_degree);
    const VecField x = random_field(rng, n, c.cfg.field_degree);
    const VecField y = random_field(rng, n, c.cfg.field_degree);
    const VecField nxy = n_def(c.j, x, y);
    const VecField vecs[2] = {x, y};
    if (variant == 'c') {
        const Form om = project_form1(c.j, zeta, Projection::P01);
        out.push_back({pair_form1(om, nxy),
                       cmul(4.0, pair_form(comp_d(c.j, om, DComp::Rho), vecs))});
    } else {
        const Form th = project_form1(c.j, zeta, Projection::P10);
        out.push_back({pair_form1(th, nxy),
                       cmul(4.0, pair_form(comp_d(c.j, th, DComp::RhoBar), vecs))});
    }
    return out;
}

std::vector<ScalarCheck> build_l42(const Ctx& c, Rng& rng) {
    const int n = c.j.dim();
    const Form zeta = random_1form(rng, n, c.cfg.field_degree);
    const VecField x = random_field(rng, n, c.cfg.field_degree);
    const Form om = project_form1(c.j, zeta, Projection::P01);
    const Form th = project_form1(c.j, zeta, Projection::P10);
    const VecField jx = j_apply(c.j, x);
    return {
        {pair_form1(om, jx), cmul(Complex{0.0, -1.0}, pair_form1(om, x))},
        {pair_form1(th, jx), cmul(Complex{0.0, 1.0}, pair_form1(th, x))},
    };
}

std::vector<ScalarCheck> build_t31(const Ctx& c, Rng& rng, char variant) {
    const int n = c.j.dim();
    const Form zeta = random_1form(rng, n, c.cfg.field_degree);
    const VecField x = random_field(rng, n, c.cfg.field_degree);
    const VecField z = random_field(rng, n, c.cfg.field_degree);
    const VecField y = random_field(rng, n, c.cfg.field_degree);
    const VecField nn = n_squared(c.j, x, z, y);
    const VecField br = lie_bracket(n_def(c.j, x, z), y);
    switch (variant) {
        case 'a': {
            const Form om = project_form1(c.j, zeta, Projection::P01);
            return {{pair_form1(om, nn), pair_form1(om, br)}};
        }
        case 'b': {
            const Form om = project_form1(c.j, zeta, Projection::P01);
            return {{pair_form1(om, j_apply(c.j, nn)),
                     cmul(Complex{0.0, -1.0}, pair_form1(om, br))}};
        }
        case 'c': {
            const Form th = project_form1(c.j, zeta, Projection::P10);
            return {{pair_form1(th, nn), pair_form1(th, br)}};
        }
        case 'd': {
            const Form th = project_form1(c.j, zeta, Projection::P10);
            return {{pair_form1(th, j_apply(c.j, nn)),
                     cmul(Complex{0.0, 1.0}, pair_form1(th, br))}};
        }
        case 'e':
            return {{pair_form1(zeta, nn), pair_form1(zeta, br)}};
        default:
            return {{pair_form1(zeta, j_apply(c.j, nn)),
                     pair_form1(j_form1(c.j, zeta), br)}};
    }
}

std::vector<ScalarCheck> build_trace(const Ctx& c, Rng&) {
    const int n = c.j.dim();
    const NijenhuisComponents nc = n_coord(c.j);
    std::vector<ScalarCheck> out;
    for (int i = 1; i <= n; ++i) {
        Expr acc;
        for (int k = 1; k <= n; ++k) acc += nc.at(i, k, k);
        out.push_back({acc, Expr()});
    }
    return out;
}

std::vector<ScalarCheck> build_t32(const Ctx& c, Rng&) {
    const WeakSquares w = weak_squares(c.j);
    std::vector<ScalarCheck> out;
    for (const Expr& si : w.s_i) out.push_back({si, Expr()});
    out.push_back({w.s, Expr()});
    return out;
}

Form chain_p(const AcsField& j, const VecField& y, const Form& eta) {
    return comp_d(j, interior(y, comp_d(j, eta, DComp::Rho)), DComp::RhoBar);
}

Form chain_q(const AcsField& j, const VecField& y, const Form& eta) {
    return comp_d(j, interior(y, comp_d(j, eta, DComp::RhoBar)), DComp::Rho);
}

std::vector<ScalarCheck> build_t41(const Ctx& c, Rng& rng, char variant) {
    const int n = c.j.dim();
    const Form zeta = random_1form(rng, n, c.cfg.field_degree);
    const VecField x = random_field(rng, n, c.cfg.field_degree);
    const VecField z = random_field(rng, n, c.cfg.field_degree);
    const VecField y = random_field(rng, n, c.cfg.field_degree);
    const VecField nn = n_squared(c.j, x, z, y);
    const VecField vecs[2] = {x, z};
    switch (variant) {
        case 'a':
        case 'b': {
            const Form om = project_form1(c.j, zeta, Projection::P01);
            const Expr rhs = pair_form(chain_p(c.j, y, om), vecs);
            if (variant == 'a')
                return {{pair_form1(om, nn), cmul(-16.0, rhs)}};
            return {{pair_form1(om, j_apply(c.j, nn)), cmul(Complex{0.0, 16.0}, rhs)}};
        }
        case 'c':
        case 'd': {
            const Form th = project_form1(c.j, zeta, Projection::P10);
            const Expr rhs = pair_form(chain_q(c.j, y, th), vecs);
            if (variant == 'c')
                return {{pair_form1(th, nn), cmul(-16.0, rhs)}};
            return {{pair_form1(th, j_apply(c.j, nn)), cmul(Complex{0.0, -16.0}, rhs)}};
        }
        default: {
            const Form jz = j_form1(c.j, zeta);
            const Form plus = zeta + jz.scaled(Complex{0.0, 1.0});
            const Form minus = zeta - jz.scaled(Complex{0.0, 1.0});
            const Expr p = pair_form(chain_p(c.j, y, plus), vecs);
            const Expr q = pair_form(chain_q(c.j, y, minus), vecs);
            if (variant == 'e')
                return {{pair_form1(zeta, nn), cmul(-8.0, p + q)}};
            return {{pair_form1(zeta, j_apply(c.j, nn)),
                     cmul(Complex{0.0, 8.0}, p - q)}};
        }
    }
}

/* coordinate dual-form caches shared by T4.3 and C4.4 */
struct DualPieces {
    // p[a][b], q[a][b]: the (2,0)->(1,0)->(0,2)-route and mirror-route
    // 2-forms for arguments d_a and dx^b +- i J dx^b
    std::vector<std::vector<Form>> p, q;
};

DualPieces dual_pieces(const AcsField& j) {
    const int n = j.dim();
    DualPieces out;
    out.p.assign(std::size_t(n), {});
    out.q.assign(std::size_t(n), {});
    std::vector<Form> plus, minus;
    for (int b = 1; b <= n; ++b) {
        const Form dxb = Form::dx(n, b);
        const Form jdx = j_form1(j, dxb);
        plus.push_back(dxb + jdx.scaled(Complex{0.0, 1.0}));
        minus.push_back(dxb - jdx.scaled(Complex{0.0, 1.0}));
    }
    std::vector<Form> rho_plus, rhobar_minus;
    for (int b = 0; b < n; ++b) {
        rho_plus.push_back(comp_d(j, plus[std::size_t(b)], DComp::Rho));
        rhobar_minus.push_back(comp_d(j, minus[std::size_t(b)], DComp::RhoBar));
    }
    for (int a = 1; a <= n; ++a) {
        const VecField da = VecField::coordinate(n, a);
        for (int b = 0; b < n; ++b) {
            out.p[std::size_t(a - 1)].push_back(
                comp_d(j, interior(da, rho_plus[std::size_t(b)]), DComp::RhoBar));
            out.q[std::size_t(a - 1)].push_back(
                comp_d(j, interior(da, rhobar_minus[std::size_t(b)]), DComp::Rho));
        }
    }
    return out;
}

std::vector<ScalarCheck> build_t43(const Ctx& c, Rng&) {
    const int n = c.j.dim();
    const DualPieces dp = dual_pieces(c.j);
    auto phi = [&](int a, int b, int u, int v) {
        return form2_on_coords(dp.p[std::size_t(a - 1)][std::size_t(b - 1)], u, v) +
               form2_on_coords(dp.q[std::size_t(a - 1)][std::size_t(b - 1)], u, v);
    };
    auto psi = [&](int a, int b, int u, int v) {
        return form2_on_coords(dp.p[std::size_t(a - 1)][std::size_t(b - 1)], u, v) -
               form2_on_coords(dp.q[std::size_t(a - 1)][std::size_t(b - 1)], u, v);
    };

    // bracket-route caches
    std::vector<std::vector<VecField>> nfield(
        std::size_t(n), std::vector<VecField>(std::size_t(n), VecField::zero(n)));
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            const VecField nab = n_def(c.j, VecField::coordinate(n, a),
                                       VecField::coordinate(n, b));
            nfield[std::size_t(a - 1)][std::size_t(b - 1)] = nab;
            nfield[std::size_t(b - 1)][std::size_t(a - 1)] = nab.scaled(Complex{-1.0, 0.0});
        }
    std::map<std::pair<int, int>, std::vector<VecField>> brackets;  // (a,b) -> per c
    auto bvec = [&](int a, int b, int cc) -> const VecField& {
        auto& v = brackets[{a, b}];
        if (v.empty()) {
            v.reserve(std::size_t(n));
            for (int w = 1; w <= n; ++w)
                v.push_back(lie_bracket(nfield[std::size_t(a - 1)][std::size_t(b - 1)],
                                        VecField::coordinate(n, w)));
        }
        return v[std::size_t(cc - 1)];
    };

    std::vector<ScalarCheck> out;
    const Expr quarter = Expr::constant(0.25);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
            for (int jj = 1; jj <= n; ++jj)
                for (int l = 1; l <= n; ++l) {
                    const Expr k_lhs =
                        quarter * (bvec(i, k, jj).component(l) + bvec(jj, k, i).component(l) +
                                   bvec(i, l, jj).component(k) + bvec(jj, l, i).component(k));
                    const Expr k_rhs = cmul(-2.0, phi(jj, l, i, k) + phi(i, l, jj, k) +
                                                      phi(jj, k, i, l) + phi(i, k, jj, l));
                    out.push_back({k_lhs, k_rhs});
                    const Expr l_lhs =
                        quarter *
                        (j_apply(c.j, bvec(i, k, jj)).component(l) +
                         j_apply(c.j, bvec(jj, k, i)).component(l) +
                         j_apply(c.j, bvec(i, l, jj)).component(k) +
                         j_apply(c.j, bvec(jj, l, i)).component(k));
                    const Expr l_rhs =
                        cmul(Complex{0.0, 2.0}, psi(jj, l, i, k) + psi(i, l, jj, k) +
                                                    psi(jj, k, i, l) + psi(i, k, jj, l));
                    out.push_back({l_lhs, l_rhs});
                }

    const NijenhuisComponents nc = n_coord(c.j);
    Expr s_total, s_dual_total, t_total, t_dual_total;
    for (int i = 1; i <= n; ++i) {
        Expr si, si_dual;
        for (int k = 1; k <= n; ++k) {
            const Expr h = hbar(nc, i, k);
            const Expr h_dual = cmul(-8.0, phi(i, k, i, k));
            out.push_back({h, h_dual});
            const Expr e = ell(nc, c.j, i, k);
            const Expr e_dual = cmul(Complex{0.0, 8.0}, psi(i, k, i, k));
            out.push_back({e, e_dual});
            si += h;
            si_dual += h_dual;
            t_total += e;
            t_dual_total += e_dual;
        }
        out.push_back({si, si_dual});
        s_total += si;
        s_dual_total += si_dual;
    }
    out.push_back({s_total, s_dual_total});
    out.push_back({t_total, t_dual_total});
    return out;
}

std::vector<ScalarCheck> build_c44(const Ctx& c, Rng&) {
    const int n = c.j.dim();
    const DualPieces dp = dual_pieces(c.j);
    std::vector<ScalarCheck> out;
    Expr sum_p, sum_q;
    for (int i = 1; i <= n; ++i) {
        Expr row;
        for (int k = 1; k <= n; ++k) {
            const Expr p = form2_on_coords(dp.p[std::size_t(i - 1)][std::size_t(k - 1)], i, k);
            const Expr q = form2_on_coords(dp.q[std::size_t(i - 1)][std::size_t(k - 1)], i, k);
            row += p + q;
            sum_p += p;
            sum_q += q;
        }
        out.push_back({row, Expr()});
    }
    out.push_back({sum_p, Expr()});
    out.push_back({sum_q, Expr()});
    return out;
}

std::vector<ScalarCheck> build_tling(const Ctx& c, Rng&) {
    return {{weak_squares(c.j).t, Expr()}};
}

std::vector<ScalarCheck> build_tens(const Ctx& c, Rng& rng) {
    const int n = c.j.dim();
    const Expr f = random_polynomial(rng, n, c.cfg.field_degree);
    const Form a = random_1form(rng, n, c.cfg.field_degree);
    std::vector<ScalarCheck> out;
    form_checks(out, comp_d(c.j, a.scaled(f), DComp::Rho),
                comp_d(c.j, a, DComp::Rho).scaled(f));
    form_checks(out, comp_d(c.j, a.scaled(f), DComp::RhoBar),
                comp_d(c.j, a, DComp::RhoBar).scaled(f));
    return out;
}

std::vector<ScalarCheck> build_dsum(const Ctx& c, Rng& rng) {
    const int n = c.j.dim();
    std::vector<ScalarCheck> out;
    const int max_deg = std::min(2, n - 1);
    for (int deg = 0; deg <= max_deg; ++deg) {
        const Form a = random_form(rng, n, deg, c.cfg.field_degree);
        Form lhs(n, deg + 1);
        for (DComp comp : {DComp::Rho, DComp::Del, DComp::DelBar, DComp::RhoBar})
            lhs = lhs + comp_d(c.j, a, comp);
        form_checks(out, lhs, ext_d(a));
    }
    return out;
}

std::vector<ScalarCheck> build_nat(const Ctx& c, Rng&) {
    std::vector<ScalarCheck> out;
    if (!c.integrable) return out;  // conditional statement; vacuous here
    const int n = c.j.dim();
    const NijenhuisComponents nc = n_coord(c.j);
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k)
            for (int r = 1; r <= n; ++r) out.push_back({nc.at(i, k, r), Expr()});
    return out;
}

// --- catalog ---------------------------------------------------------------

using Builder = std::function<std::vector<ScalarCheck>(const Ctx&, Rng&)>;

struct CatalogRow {
    CatalogEntry entry;
    Builder build;
};

const std::vector<CatalogRow>& catalog_rows() {
    static const std::vector<CatalogRow> rows = [] {
        std::vector<CatalogRow> r;
        auto add = [&r](const char* id, const char* st, Tier t, Builder b) {
            r.push_back({{id, st, t}, std::move(b)});
        };
        add("L2.1",
            "pi01[pi10 X, pi10 Y] = -(1/4) pi01 N(X,Y) and pi10[pi01 X, pi01 Y] = "
            "-(1/4) pi10 N(X,Y)",
            Tier::DerivedChain, build_l21);
        add("L2.2a", "dbar f(N(X,Y)) = -4 (del^2 f)(X,Y)", Tier::DerivedChain,
            [](const Ctx& c, Rng& g) { return build_l22(c, g, 'a'); });
        add("L2.2b", "del f(N(X,Y)) = -4 (dbar^2 f)(X,Y)", Tier::DerivedChain,
            [](const Ctx& c, Rng& g) { return build_l22(c, g, 'b'); });
        add("L2.2c", "omega(N(X,Y)) = 4 (rho omega)(X,Y) for (0,1)-form omega",
            Tier::DerivedChain,
            [](const Ctx& c, Rng& g) { return build_l22(c, g, 'c'); });
        add("L2.2d", "theta(N(X,Y)) = 4 (rhobar theta)(X,Y) for (1,0)-form theta",
            Tier::DerivedChain,
            [](const Ctx& c, Rng& g) { return build_l22(c, g, 'd'); });
        add("L4.2", "omega(JX) = -i omega(X); theta(JX) = i theta(X)",
            Tier::DerivedChain, build_l42);
        add("T3.1a", "omega(N2(X,Z;Y)) = omega([N(X,Z),Y]) for (0,1)-form omega",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'a'); });
        add("T3.1b", "omega(JN2(X,Z;Y)) = -i omega([N(X,Z),Y]) for (0,1)-form omega",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'b'); });
        add("T3.1c", "theta(N2(X,Z;Y)) = theta([N(X,Z),Y]) for (1,0)-form theta",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'c'); });
        add("T3.1d", "theta(JN2(X,Z;Y)) = i theta([N(X,Z),Y]) for (1,0)-form theta",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'd'); });
        add("T3.1e", "zeta(N2(X,Z;Y)) = zeta([N(X,Z),Y]) for real zeta",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'e'); });
        add("T3.1f", "zeta(JN2(X,Z;Y)) = (J zeta)([N(X,Z),Y]) for real zeta",
            Tier::AsStated, [](const Ctx& c, Rng& g) { return build_t31(c, g, 'f'); });
        add("TRACE", "sum_k N_ik^k = 0 for every i", Tier::DerivedChain, build_trace);
        add("T3.2", "S_i = 0 for every i, and S = 0", Tier::DerivedChain, build_t32);
        add("T4.1a", "omega(N2(X,Z;Y)) = -16 (rhobar i(Y) rho omega)(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'a'); });
        add("T4.1b", "omega(JN2(X,Z;Y)) = 16i (rhobar i(Y) rho omega)(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'b'); });
        add("T4.1c", "theta(N2(X,Z;Y)) = -16 (rho i(Y) rhobar theta)(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'c'); });
        add("T4.1d", "theta(JN2(X,Z;Y)) = -16i (rho i(Y) rhobar theta)(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'd'); });
        add("T4.1e",
            "zeta(N2(X,Z;Y)) = -8{rhobar i(Y) rho(zeta + i J zeta) + rho i(Y) "
            "rhobar(zeta - i J zeta)}(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'e'); });
        add("T4.1f",
            "zeta(JN2(X,Z;Y)) = 8i{rhobar i(Y) rho(zeta + i J zeta) - rho i(Y) "
            "rhobar(zeta - i J zeta)}(X,Z)",
            Tier::DerivedChain, [](const Ctx& c, Rng& g) { return build_t41(c, g, 'f'); });
        add("T4.3",
            "coordinate dual forms of K, L, hbar, ell, S_i, S, T through "
            "rhobar i(d) rho(dx + iJdx) and rho i(d) rhobar(dx - iJdx)",
            Tier::AsStated, build_t43);
        add("C4.4",
            "sum_k {rhobar i(d_i) rho(dx^k+iJdx^k) + rho i(d_i) rhobar(dx^k-iJdx^k)}"
            "(d_i,d_k) = 0 per i; the two double sums vanish separately",
            Tier::AsStated, build_c44);
        add("TLING", "T = 0", Tier::AsStated, build_tling);
        add("TENS", "rho(f a) = f rho(a) and rhobar(f a) = f rhobar(a)",
            Tier::DerivedChain, build_tens);
        add("DSUM", "rho + del + dbar + rhobar = d on degrees 0..2",
            Tier::DerivedChain, build_dsum);
        add("NAT", "N = 0 on structures marked integrable", Tier::DerivedChain,
            build_nat);
        return r;
    }();
    return rows;
}

struct Residuals {
    double max_abs = 0.0;
    double max_rel = 0.0;
    bool finite = true;
};

Residuals measure(const std::vector<ScalarCheck>& checks,
                  const std::vector<std::vector<double>>& points) {
    Residuals res;
    try {
        for (const ScalarCheck& c : checks) {
            const CompiledExpr lhs(c.lhs);
            const CompiledExpr rhs(c.rhs);
            for (const auto& p : points) {
                const Complex l = lhs.eval(p);
                const Complex r = rhs.eval(p);
                const double abs = std::abs(l - r);
                const double rel = abs / (1.0 + std::max(std::abs(l), std::abs(r)));
                res.max_abs = std::max(res.max_abs, abs);
                res.max_rel = std::max(res.max_rel, rel);
            }
        }
    } catch (const EvalError&) {
        res.finite = false;
        res.max_abs = std::numeric_limits<double>::quiet_NaN();
        res.max_rel = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    for (const CatalogRow& r : catalog_rows()) out.push_back(r.entry);
    return out;
}

IdentityReport check_identity(const std::string& id, const AcsField& j,
                              const SuiteConfig& config, bool integrable) {
    config.check();
    const CatalogRow* row = nullptr;
    for (const CatalogRow& r : catalog_rows())
        if (id == r.entry.id) {
            row = &r;
            break;
        }
    if (!row) throw std::invalid_argument("unknown identity id: " + id);

    Rng rng(config.seed ^ fnv1a64(id));
    const std::vector<std::vector<double>> points =
        sample_points(rng, j, config, config.points);
    const Ctx ctx{j, config, integrable};
    IdentityReport rep;
    rep.id = row->entry.id;
    rep.statement = row->entry.statement;
    rep.tier = row->entry.tier;
    rep.samples = config.points;
    const Residuals res = measure(row->build(ctx, rng), points);
    rep.max_abs_residual = res.max_abs;
    rep.max_rel_residual = res.max_rel;
    rep.finite = res.finite;
    rep.pass = res.finite && res.max_rel < config.tolerance;
    return rep;
}

SuiteReport run_suite(const AcsField& j, const SuiteConfig& config,
                      const std::string& structure_name, bool integrable) {
    config.check();
    SuiteReport out;
    out.structure = structure_name;
    out.dim = j.dim();
    bool pass = true;
    for (const CatalogRow& r : catalog_rows()) {
        IdentityReport rep = check_identity(r.entry.id, j, config, integrable);
        if (rep.tier == Tier::DerivedChain) pass = pass && rep.pass;
        out.identities.push_back(std::move(rep));
    }
    out.overall_pass = pass;
    return out;
}

}  // namespace nijex
