// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fourier_oracle.hpp"
#include "genkf/analysis.hpp"
#include "genkf/sample.hpp"
#include "genkf/spec_io.hpp"
#include "genkf/suite.hpp"

using namespace genkf;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> detail;
};

std::string fmt(const char* f, double a, double b = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// folds a check group into the outcome; failing checks are always listed
void absorb(Outcome& o, const SuiteResult& s, bool verbose = false)
{
    for (const auto& c : s.checks) {
        if (!c.pass) o.pass = false;
        if (verbose || !c.pass)
            o.detail.push_back(std::string(c.pass ? "ok   " : "FAIL ") + c.name + " = " + fmt("%.3e", c.value) +
                               " (" + c.compare + " " + fmt("%.0e", c.tolerance) + ")");
    }
}

double worst(const SuiteResult& s)
{
    double w = 0.0;
    for (const auto& c : s.checks)
        if (c.compare == "<") w = std::max(w, c.value);
    return w;
}

Outcome c1_algebra()
{
    Outcome o;
    Rng rng(101);
    for (int n = 1; n <= 3; ++n) {
        SuiteResult s = algebra_checks(n, 1000, rng);
        absorb(o, s);
        o.detail.push_back(fmt("n=%.0f: 1000 trials, max error %.2e", n, worst(s)));
    }
    return o;
}

Outcome c2_structures()
{
    Outcome o;
    Rng rng(102);
    for (int n = 1; n <= 3; ++n) {
        SuiteResult s = structure_checks(n, rng);
        absorb(o, s);
        o.detail.push_back(fmt("n=%.0f: %.0f checks", n, double(s.checks.size())));
    }
    return o;
}

Outcome c3_covariance()
{
    Outcome o;
    Rng rng(103);
    auto g = TorusGrid::make(1, 32);
    const MatR W = darboux(1);
    const GradedForm psi0 = symplectic_spinor(1, 0.3 * rng.antisym(2), W);
    SuiteResult s = covariance_checks(g, 2, psi0, 0.4 * rng.antisym(2), rng);
    absorb(o, s, true);
    for (const auto& i : s.info) o.detail.push_back("info " + i.name + " = " + fmt("%.3e", i.value));
    if (!o.pass)
        o.detail.push_back("literal identity misses (1/2) sum [V^mu, V^nu] b_{nu mu} for non-commuting V; "
                           "see README, known failures");
    return o;
}

Outcome c4_specialization()
{
    Outcome o;
    Rng rng(104);
    auto g = TorusGrid::make(1, 32);
    absorb(o, specialization_checks(g, 2, darboux(1), rng), true);
    MatR W = darboux(1) + 0.2 * rng.antisym(2);
    absorb(o, specialization_checks(g, 2, W, rng), true);
    return o;
}

Outcome c5_chern()
{
    Outcome o;
    Rng rng(105);
    auto g1 = TorusGrid::make(1, 32);
    absorb(o, chern_checks(g1, 2, symplectic_spinor(1, 0.3 * rng.antisym(2), darboux(1)), rng), true);
    auto g2 = TorusGrid::make(2, 8);
    absorb(o, chern_checks(g2, 1, symplectic_spinor(2, 0.3 * rng.antisym(4), darboux(2)), rng), true);
    return o;
}

Outcome c6_moment()
{
    Outcome o;
    Rng rng(106);
    auto g1 = TorusGrid::make(1, 32);
    absorb(o, moment_checks(g1, 2, symplectic_spinor(1, 0.3 * rng.antisym(2), darboux(1)), rng), true);
    auto g2 = TorusGrid::make(2, 8);
    absorb(o, moment_checks(g2, 1, symplectic_spinor(2, 0.3 * rng.antisym(4), darboux(2)), rng), true);
    return o;
}

Outcome c7_symbols()
{
    Outcome o;
    Rng rng(107);
    for (int n = 1; n <= 2; ++n)
        for (int r = 1; r <= 2; ++r) {
            MatR W = darboux(n) + 0.2 * rng.antisym(2 * n), b = 0.3 * rng.antisym(2 * n);
            SuiteResult s = symbol_checks(n, r, W, b, 100, rng);
            absorb(o, s);
            o.detail.push_back(fmt("n=%.0f r=%.0f: 100 directions", n, r) + (s.all_pass() ? ", all exact" : ""));
        }
    return o;
}

GenConnection perturbed_flat(GridPtr g)
{
    GenConnection c(g, 1);
    const double tp = 2 * std::numbers::pi;
    for (std::size_t p = 0; p < g->points(); ++p) {
        const double x = g->x(p, 0), y = g->x(p, 1);
        c.A[0].v[p] = I_ * (0.25 * std::sin(tp * y) + 0.1 * std::cos(tp * (x + 2 * y)));
        c.A[1].v[p] = I_ * (-0.2 * std::cos(2 * tp * x) + 0.05 * std::sin(tp * (3 * x - y)));
        c.V[0].v[p] = I_ * 0.1 * std::sin(tp * x);
        c.V[1].v[p] = I_ * 0.1 * std::cos(tp * y);
    }
    return c;
}

Outcome c8_solver()
{
    Outcome o;
    auto g = TorusGrid::make(1, 32);
    FormField psi = constant_psi(g, MatR::Zero(2, 2), darboux(1));
    GenConnection init = perturbed_flat(g);
    SolveOptions opts;
    SolveResult res = solve_eh_line(init, psi, opts);
    const double rn = eh_residual(res.conn, psi, res.trace.lambda).norm;
    const bool conv = res.trace.converged && rn < 1e-8 && res.trace.iterations <= 10000;
    o.pass = conv;
    o.detail.push_back(fmt("b = 0: residual %.2e after %.0f iterations", rn, res.trace.iterations) + " (" +
                       res.trace.stop_reason + ")");

    oracle::LineCorrection oc = oracle::line_correction(init);
    double err = 0.0;
    for (std::size_t p = 0; p < g->points(); ++p) {
        err = std::max(err, std::abs((res.conn.A[0].v[p] - init.A[0].v[p]).imag() - oc.da_x[p]));
        err = std::max(err, std::abs((res.conn.A[1].v[p] - init.A[1].v[p]).imag() - oc.da_y[p]));
        err = std::max(err, std::abs(res.conn.V[0].v[p] - init.V[0].v[p]));
        err = std::max(err, std::abs(res.conn.V[1].v[p] - init.V[1].v[p]));
    }
    const bool oracle_ok = err < 1e-6 && oc.unreachable < 1e-12;
    o.pass = o.pass && oracle_ok;
    o.detail.push_back(std::string(oracle_ok ? "ok   " : "FAIL ") + fmt("Fourier minimal-norm oracle: max diff %.2e", err));

    // b = c omega: V enters the equation
    FormField psib = constant_psi(g, 0.7 * darboux(1), darboux(1));
    SolveResult rb = solve_eh_line(init, psib, opts);
    const double rbn = eh_residual(rb.conn, psib, rb.trace.lambda).norm;
    const bool ok_b = rb.trace.converged && rbn < 1e-8;
    o.pass = o.pass && ok_b;
    o.detail.push_back(std::string(ok_b ? "ok   " : "FAIL ") +
                       fmt("b = 0.7 omega: residual %.2e after %.0f iterations", rbn, rb.trace.iterations));
    return o;
}

std::string run_dump(const std::function<json()>& f, int cap)
{
    set_thread_cap(cap);
    std::string s = f().dump(2);
    set_thread_cap(0);
    return s;
}

Outcome c9_determinism()
{
    Outcome o;
    const json doc = json::parse(R"J({"n": 1, "grid": {"sizes": 32}, "bundle": {"rank": 2},
        "psi": {"b": [[0, 0.25], [-0.25, 0]]},
        "connection": {"A": {"random": {"amplitude": 0.4}}, "V": {"random": {"amplitude": 0.4}}}})J");
    const std::vector<std::pair<std::string, std::function<json()>>> cmds = {
        {"verify",
         [&] {
             Rng rng(9);
             Problem pr = load_problem(doc, {}, rng);
             return checks_to_json(run_verify(pr, {}, rng));
         }},
        {"symbols",
         [&] {
             Rng rng(9);
             MatR W = darboux(2);
             MatR b = 0.3 * rng.antisym(4);
             return checks_to_json(symbol_checks(2, 2, W, b, 100, rng));
         }},
        {"solve",
         [&] {
             Rng rng(9);
             Overrides ov;
             ov.rank = 1;
             Problem pr = load_problem(doc, ov, rng);
             SolveResult r = solve_eh_line(pr.conn, pr.psi, {});
             json j = dump_connection(r.conn);
             j["history"] = r.trace.residual_history;
             return j;
         }},
    };
    for (const auto& [name, f] : cmds) {
        const std::string a = run_dump(f, 1), b = run_dump(f, 4);
        const bool same = a == b;
        o.pass = o.pass && same;
        o.detail.push_back(std::string(same ? "ok   " : "FAIL ") + name + ": 1 vs 4 workers " +
                           (same ? "byte-identical" : "differ") + fmt(" (%.0f bytes)", double(a.size())));
    }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double limit_s; // 0: no runtime bound
        Outcome (*run)();
    };
    const Criterion all[] = {
        {1, "Clifford/Mukai algebra", 10, c1_algebra},
        {2, "generalized structures", 10, c2_structures},
        {3, "curvature b-covariance and EH b-invariance", 30, c3_covariance},
        {4, "specialization cross-checks", 0, c4_specialization},
        {5, "Chern pairing and lambda", 0, c5_chern},
        {6, "moment map identities", 0, c6_moment},
        {7, "symbol exactness", 60, c7_symbols},
        {8, "Einstein-Hermitian line solver", 60, c8_solver},
        {9, "determinism across worker counts", 0, c9_determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass;
        if (c.limit_s > 0 && sec > c.limit_s) {
            pass = false;
            o.detail.push_back(fmt("runtime %.1f s exceeds %.0f s", sec, c.limit_s));
        }
        failed += !pass;
        std::printf("%s criterion %d: %s [%.2f s]\n", pass ? "PASS" : "FAIL", c.id, c.title, sec);
        for (const auto& d : o.detail) std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
