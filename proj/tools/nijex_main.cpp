#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nijex/builtins.hpp"
#include "nijex/report.hpp"
#include "nijex/verify.hpp"

namespace {

using namespace nijex;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;   // validation or derived-chain identity failure
constexpr int kExitUsage = 2;  // parse/schema/usage errors

StructureSpec resolve_structure(const std::string& ref) {
    if (const BuiltinInfo* b = find_builtin(ref)) return parse_structure_spec(b->spec_json);
    return load_structure_spec(ref);
}

std::string format_complex(Complex v) {
    char re[40], im[40];
    std::snprintf(re, sizeof re, "%.15g", v.real());
    if (v.imag() == 0.0) return re;
    std::snprintf(im, sizeof im, "%.15g", std::abs(v.imag()));
    return std::string(re) + (v.imag() < 0 ? " - " : " + ") + im + "i";
}

int cmd_verify(const std::string& ref, SuiteConfig config,
               const std::string& json_path, bool quiet, bool timing) {
    const StructureSpec spec = resolve_structure(ref);
    const AcsField j = build_acs(spec);

    const auto t0 = std::chrono::steady_clock::now();

    // validation samples: unfiltered draws from the box
    Rng vrng(config.seed ^ fnv1a64("validation"));
    std::vector<std::vector<double>> samples;
    for (int s = 0; s < config.points; ++s) {
        std::vector<double> p(std::size_t(spec.dim));
        for (int c = 0; c < spec.dim; ++c)
            p[std::size_t(c)] =
                vrng.uniform(spec.box[std::size_t(c)][0], spec.box[std::size_t(c)][1]);
        samples.push_back(std::move(p));
    }
    const ValidationReport validation = validate(j, samples, spec.tolerance);

    SuiteReport suite;
    if (validation.pass) {
        suite = run_suite(j, config, spec.name, spec.integrable);
    } else {
        suite.structure = spec.name;
        suite.dim = spec.dim;
        suite.overall_pass = false;
    }

    const auto t1 = std::chrono::steady_clock::now();
    std::optional<ReportTiming> rt;
    if (timing)
        rt = ReportTiming{std::chrono::duration<double, std::milli>(t1 - t0).count()};

    const std::string report = render_report(spec, config, validation, suite, rt);
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return kExitUsage;
        }
        out << report;
        if (!quiet) {
            std::cout << spec.name << ": validation "
                      << (validation.pass ? "pass" : "FAIL");
            for (const IdentityReport& r : suite.identities)
                std::cout << "\n  " << r.id << " ["
                          << (r.tier == Tier::DerivedChain ? "tier-1" : "tier-2")
                          << "] rel=" << format_double(r.max_rel_residual)
                          << (r.pass ? " pass" : " fail");
            std::cout << "\n";
        }
    } else if (!quiet) {
        std::cout << report;
    }
    return (validation.pass && suite.overall_pass) ? kExitPass : kExitFail;
}

std::vector<double> parse_point(const std::string& at, int dim) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= at.size()) {
        std::size_t comma = at.find(',', pos);
        if (comma == std::string::npos) comma = at.size();
        const std::string tok = at.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
                ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw SpecError("--at: cannot parse coordinate '" + tok + "'");
        }
        pos = comma + 1;
        if (comma == at.size()) break;
    }
    if (int(out.size()) != dim)
        throw SpecError("--at: expected " + std::to_string(dim) + " coordinates");
    return out;
}

int cmd_eval(const std::string& ref, const std::string& what, const std::string& at,
             int i, int k, int jj, int l) {
    const StructureSpec spec = resolve_structure(ref);
    const AcsField j = build_acs(spec);
    const int n = spec.dim;
    const std::vector<double> pt = parse_point(at, n);
    if (!j.chart().contains(pt)) throw SpecError("--at: point lies outside the box");
    auto need = [n](const char* flag, int v) {
        if (v < 1 || v > n)
            throw SpecError(std::string(flag) + " must be in 1.." + std::to_string(n));
    };

    if (what == "N") {
        const NijenhuisComponents nc = n_coord(j);
        for (int a = 1; a <= n; ++a) {
            if (i != 0 && a != i) continue;
            for (int b = a + 1; b <= n; ++b) {
                if (k != 0 && b != k) continue;
                for (int r = 1; r <= n; ++r)
                    std::cout << "N[" << a << "," << b << "," << r
                              << "] = " << format_complex(nc.at(a, b, r).eval(pt)) << "\n";
            }
        }
        return kExitPass;
    }
    if (what == "N2") {
        need("--i", i);
        need("--k", k);
        need("--j", jj);
        const VecField nn = n_squared(j, VecField::coordinate(n, i),
                                      VecField::coordinate(n, k),
                                      VecField::coordinate(n, jj));
        for (int r = 1; r <= n; ++r)
            std::cout << "N2[" << r << "] = " << format_complex(nn.component(r).eval(pt))
                      << "\n";
        return kExitPass;
    }
    if (what == "S") {
        const WeakSquares w = weak_squares(j);
        for (int a = 1; a <= n; ++a)
            std::cout << "S_" << a << " = "
                      << format_complex(w.s_i[std::size_t(a - 1)].eval(pt)) << "\n";
        std::cout << "S = " << format_complex(w.s.eval(pt)) << "\n";
        return kExitPass;
    }
    if (what == "T") {
        std::cout << "T = " << format_complex(weak_squares(j).t.eval(pt)) << "\n";
        return kExitPass;
    }
    if (what == "hbar") {
        need("--i", i);
        need("--k", k);
        std::cout << "hbar[" << i << "," << k
                  << "] = " << format_complex(hbar(j, i, k).eval(pt)) << "\n";
        return kExitPass;
    }
    if (what == "rho" || what == "rhobar") {
        need("--l", l);
        const Form out = comp_d(j, Form::dx(n, l),
                                what == "rho" ? DComp::Rho : DComp::RhoBar);
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                const int idx[2] = {a, b};
                std::cout << what << "(dx" << l << ")[" << a << "," << b
                          << "] = " << format_complex(out.coefficient(idx).eval(pt))
                          << "\n";
            }
        return kExitPass;
    }
    throw SpecError("--what: unknown quantity '" + what + "'");
}

int cmd_builtins() {
    for (const BuiltinInfo& b : builtins()) {
        std::cout << b.name << ": " << b.summary << "\n";
        std::cout << b.spec_json << "\n\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-complex chart calculus: Nijenhuis tensor, bigraded "
                 "exterior derivative, and an identity verification suite"};
    app.require_subcommand(1);

    std::string ref, json_path, what, at;
    SuiteConfig config;
    bool quiet = false, timing = false;
    int fi = 0, fk = 0, fj = 0, fl = 0;

    CLI::App* verify = app.add_subcommand(
        "verify", "validate a structure and run the identity suite");
    verify->add_option("structure", ref, "builtin name or spec file path")->required();
    verify->add_option("--tol", config.tolerance, "relative residual tolerance");
    verify->add_option("--points", config.points, "sample point count");
    verify->add_option("--seed", config.seed, "random seed");
    verify->add_option("--field-degree", config.field_degree,
                       "polynomial degree of random test fields");
    verify->add_option("--json", json_path, "write the JSON report to this path");
    verify->add_flag("--quiet", quiet, "suppress stdout output");
    verify->add_flag("--timing", timing,
                     "include wall-clock timing in the report (breaks "
                     "byte-for-byte determinism)");

    CLI::App* eval = app.add_subcommand("eval", "evaluate a quantity at a point");
    eval->add_option("structure", ref, "builtin name or spec file path")->required();
    eval->add_option("--what", what, "N | N2 | S | T | hbar | rho | rhobar")->required();
    eval->add_option("--at", at, "comma-separated point coordinates")->required();
    eval->add_option("--i", fi, "first index");
    eval->add_option("--k", fk, "second index");
    eval->add_option("--j", fj, "third index");
    eval->add_option("--l", fl, "form index");

    CLI::App* blt = app.add_subcommand("builtins", "list builtin structures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help/message
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(ref, config, json_path, quiet, timing);
        if (eval->parsed()) return cmd_eval(ref, what, at, fi, fk, fj, fl);
        if (blt->parsed()) return cmd_builtins();
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
