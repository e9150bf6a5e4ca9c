/* Acceptance suite: one pass/fail line per criterion.  Criterion 8 drives
 * the CLI binary, whose path arrives as argv[1]. */

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "nijex/builtins.hpp"
#include "nijex/report.hpp"
#include "nijex/verify.hpp"
#include "test_util.hpp"

using namespace nijex;
using namespace nijex::testutil;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

AcsField builtin(const std::string& name) { return build_acs(builtin_spec(name)); }

std::vector<std::vector<double>> seeded_points(const AcsField& j, int count,
                                               std::uint64_t seed) {
    SuiteConfig cfg;
    cfg.points = count;
    Rng rng(seed);
    return sample_points(rng, j, cfg, count);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criteria ---------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const char* name : {"flat", "pullback4", "twist4"}) {
        const AcsField j = builtin(name);
        const int n = j.dim();
        const NijenhuisComponents nc = n_coord(j);
        const auto pts = seeded_points(j, 100, 20260810);
        for (int i = 1; i <= n; ++i)
            for (int k = i + 1; k <= n; ++k) {
                const VecField nd =
                    n_def(j, VecField::coordinate(n, i), VecField::coordinate(n, k));
                std::vector<CompiledExpr> coord, defs;
                for (int r = 1; r <= n; ++r) {
                    coord.emplace_back(nc.at(i, k, r));
                    defs.emplace_back(nd.component(r));
                }
                for (const auto& p : pts)
                    for (int r = 0; r < n; ++r)
                        worst = std::max(worst,
                                         std::abs(coord[std::size_t(r)].eval(p) -
                                                  defs[std::size_t(r)].eval(p)));
            }
    }
    const double elapsed = seconds_since(t0);
    report(1, worst < 1e-10 && elapsed < 30.0,
           "coordinate and bracket routes agree on flat, pullback4, twist4",
           "max |delta| = " + format_double(worst) + ", " + format_double(elapsed) + " s");
}

void criterion_2() {
    double worst = 0.0;
    for (const char* name : {"flat2", "flat4", "flat6", "pullback4", "twist4"}) {
        const AcsField j = builtin(name);
        const NijenhuisComponents nc = n_coord(j);
        const auto pts = seeded_points(j, 100, 77001);
        for (int i = 1; i <= j.dim(); ++i) {
            Expr acc;
            for (int k = 1; k <= j.dim(); ++k) acc += nc.at(i, k, k);
            const CompiledExpr trace(acc);
            for (const auto& p : pts) worst = std::max(worst, std::abs(trace.eval(p)));
        }
    }
    report(2, worst < 1e-10, "sum_k N_ik^k vanishes on every builtin",
           "max |sum| = " + format_double(worst));
}

void criterion_3() {
    const AcsField j = builtin("twist4");
    const WeakSquares w = weak_squares(j);
    const auto pts = seeded_points(j, 50, 501);
    double worst = 0.0;
    for (const auto& p : pts) {
        for (const Expr& si : w.s_i) worst = std::max(worst, std::abs(si.eval(p)));
        worst = std::max(worst, std::abs(w.s.eval(p)));
    }
    report(3, worst < 1e-9, "S_i and S vanish on twist4 at 50 seeded points",
           "max = " + format_double(worst));
}

void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteConfig cfg;  // seed 42, 50 points, degree 2, tol 1e-9
    const SuiteReport rep = run_suite(builtin("twist4"), cfg, "twist4", false);
    const double elapsed = seconds_since(t0);
    bool tier1 = true;
    std::string failed;
    for (const IdentityReport& r : rep.identities)
        if (r.tier == Tier::DerivedChain && !r.pass) {
            tier1 = false;
            failed += r.id + " ";
        }
    report(4, tier1 && elapsed < 120.0,
           "derived-chain identity suite passes on twist4 (seed 42, 50 points)",
           (failed.empty() ? "all pass" : "failed: " + failed) + ", " +
               format_double(elapsed) + " s");
}

void criterion_5() {
    const AcsField flat = builtin("flat");
    const NijenhuisComponents nf = n_coord(flat);
    bool flat_exact = true;
    for (int i = 1; i <= 4 && flat_exact; ++i)
        for (int k = 1; k <= 4 && flat_exact; ++k)
            for (int r = 1; r <= 4 && flat_exact; ++r)
                flat_exact = nf.at(i, k, r).is_zero();
    const auto fpts = seeded_points(flat, 100, 99);
    for (int i = 1; i <= 4 && flat_exact; ++i)
        for (int k = i + 1; k <= 4 && flat_exact; ++k) {
            const VecField nd =
                n_def(flat, VecField::coordinate(4, i), VecField::coordinate(4, k));
            for (int r = 1; r <= 4 && flat_exact; ++r) {
                if (!nd.component(r).is_zero()) flat_exact = false;
                for (const auto& p : fpts)
                    if (nd.component(r).eval(p) != Complex{0.0, 0.0}) flat_exact = false;
            }
        }

    const AcsField pb = builtin("pullback4");
    const NijenhuisComponents npb = n_coord(pb);
    const auto pts = seeded_points(pb, 100, 100);
    double worst = 0.0;
    for (int i = 1; i <= 4; ++i)
        for (int k = i + 1; k <= 4; ++k)
            for (int r = 1; r <= 4; ++r) {
                const CompiledExpr e(npb.at(i, k, r));
                for (const auto& p : pts) worst = std::max(worst, std::abs(e.eval(p)));
            }
    report(5, flat_exact && worst < 1e-10,
           "N is exactly zero on flat and below 1e-10 on pullback4",
           std::string("flat exact = ") + (flat_exact ? "yes" : "no") +
               ", pullback4 max = " + format_double(worst));
}

void criterion_6() {
    Rng rng(424242);
    int done = 0, skipped = 0;
    double worst = 0.0;
    while (done < 200 && skipped < 200) {
        const Expr e = random_expression(rng, 3, 4);
        const auto p = random_point(rng, 3, -0.9, 0.9);
        const int var = 1 + int(rng.next() % 3);
        try {
            const Complex sym = e.diff(var).eval(p);
            const Complex fd = central_fd(e, var, p);
            worst = std::max(worst, std::abs(sym - fd) / (1.0 + std::abs(fd)));
            ++done;
        } catch (const EvalError&) {
            ++skipped;  // magnitude guardrails keep this rare
        }
    }
    report(6, done == 200 && worst < 1e-6,
           "symbolic derivatives match central differences on 200 expressions",
           "max rel err = " + format_double(worst) + ", skipped " +
               std::to_string(skipped));
}

void criterion_7() {
    SuiteConfig cfg;
    const SuiteReport tw = run_suite(builtin("twist4"), cfg, "twist4", false);
    bool records = true;
    for (const char* id : {"T3.1a", "T3.1b", "T3.1c", "T3.1d", "T3.1e", "T3.1f",
                           "T4.3", "C4.4", "TLING"}) {
        bool found = false;
        for (const IdentityReport& r : tw.identities)
            found = found || (r.id == id && r.tier == Tier::AsStated && r.finite);
        records = records && found;
    }
    bool tier1 = true;
    for (const IdentityReport& r : tw.identities)
        if (r.tier == Tier::DerivedChain) tier1 = tier1 && r.pass;
    const bool ignores_tier2 = tw.overall_pass == tier1;

    double worst = 0.0;
    for (const char* name : {"flat", "pullback4"}) {
        const SuiteReport rep =
            run_suite(builtin(name), cfg, name, /*integrable=*/true);
        for (const IdentityReport& r : rep.identities)
            if (r.tier == Tier::AsStated) worst = std::max(worst, r.max_abs_residual);
    }
    report(7, records && ignores_tier2 && worst < 1e-12,
           "as-stated layer is recorded, ignored by the verdict, and vanishes "
           "on integrable builtins",
           "max tier-2 residual = " + format_double(worst));
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& bin, const std::string& args) {
    const std::string cmd = "'" + bin + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult res;
    if (!pipe) return res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_8(const std::string& bin) {
    char tmpl[] = "/tmp/nijex-acceptance-XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (!dir) {
        report(8, false, "CLI determinism and exit codes", "mkdtemp failed");
        return;
    }
    const std::string d(dir);
    bool ok = true;
    std::string detail;

    for (const char* name : {"flat2", "flat4", "flat6", "pullback4", "twist4"}) {
        const std::string a = d + "/" + name + "-a.json";
        const std::string b = d + "/" + name + "-b.json";
        const std::string args = std::string("verify ") + name + " --points 10 --quiet";
        const RunResult r1 = run_cli(bin, args + " --json " + a);
        const RunResult r2 = run_cli(bin, args + " --json " + b);
        if (r1.exit_code != 0 || r2.exit_code != 0) {
            ok = false;
            detail += std::string(name) + " exit codes " + std::to_string(r1.exit_code) +
                      "/" + std::to_string(r2.exit_code) + "; ";
        }
        const std::string da = slurp(a), db = slurp(b);
        if (da.empty() || da != db) {
            ok = false;
            detail += std::string(name) + " reports differ; ";
        }
    }

    {
        std::ofstream bad(d + "/bad.json");
        bad << "{ this is not json";
    }
    const RunResult rbad = run_cli(bin, "verify " + d + "/bad.json --quiet");
    if (rbad.exit_code != 2) {
        ok = false;
        detail += "malformed spec exit " + std::to_string(rbad.exit_code) + " != 2; ";
    }

    {
        std::ofstream fail(d + "/notacs.json");
        fail << R"({"name":"notacs","dim":2,"J":{"matrix":[["1","0"],["0","1"]]}})";
    }
    const RunResult rfail = run_cli(bin, "verify " + d + "/notacs.json --quiet");
    if (rfail.exit_code != 1) {
        ok = false;
        detail += "invalid structure exit " + std::to_string(rfail.exit_code) + " != 1; ";
    }

    const RunResult rmissing = run_cli(bin, "verify " + d + "/does-not-exist.json --quiet");
    if (rmissing.exit_code != 2) {
        ok = false;
        detail += "missing file exit " + std::to_string(rmissing.exit_code) + " != 2; ";
    }

    report(8, ok, "CLI reports are byte-identical and exit codes follow the contract",
           detail.empty() ? "5 builtins x 2 runs" : detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (argc > 1) {
        criterion_8(argv[1]);
    } else {
        report(8, false, "CLI determinism and exit codes", "no CLI path given");
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
