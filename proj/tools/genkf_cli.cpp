// genkf: verification and solver front end.
// Exit codes: 0 pass, 1 a checked property failed, 2 input or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "genkf/analysis.hpp"
#include "genkf/sample.hpp"
#include "genkf/suite.hpp"

using namespace genkf;

namespace {

struct Common {
    std::string input, output, history_csv, theta;
    std::uint64_t seed = 1;
    int grid = 0, rank = 0, max_iter = 10000, trials = -1;
    double tol = 1e-8;
    double lambda = 0.0;
    bool has_lambda = false;
};

void add_common(CLI::App* sub, Common& o)
{
    sub->add_option("--input", o.input, "input JSON document");
    sub->add_option("--output", o.output, "report path (JSON)");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--grid", o.grid, "grid points per axis (overrides input)")->check(CLI::Range(8, 4096));
    sub->add_option("--rank", o.rank, "bundle rank (overrides input)")->check(CLI::Range(1, 8));
    sub->add_option("--tol", o.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", o.max_iter, "solver iteration budget")->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", o.trials, "random trials")->check(CLI::Range(1, 100000));
}

json load_input(const Common& o)
{
    if (o.input.empty()) return json::object();
    return read_json_file(o.input);
}

Problem problem(const Common& o, Rng& rng)
{
    Overrides ov;
    if (o.grid > 0) ov.grid = o.grid;
    if (o.rank > 0) ov.rank = o.rank;
    return load_problem(load_input(o), ov, rng);
}

json config_json(const Problem& pr)
{
    return {{"n", pr.n},
            {"grid", {{"sizes", pr.g->sizes()}, {"periods", pr.g->periods()}}},
            {"rank", pr.rank},
            {"psi_constant", pr.psi_constant},
            {"psi_d_norm", pr.psi_check.d_norm},
            {"psi_d_tolerance", pr.psi_check.tolerance}};
}

void emit(const Common& o, const json& report)
{
    if (!o.output.empty()) write_json_file(o.output, report);
}

void print_checks(const SuiteResult& s)
{
    for (const auto& c : s.checks)
        std::printf("%s  %-52s %.3e %s %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.compare.c_str(),
                    c.tolerance);
    for (const auto& i : s.info) std::printf("info  %-52s %.3e\n", i.name.c_str(), i.value);
}

int cmd_verify(const Common& o)
{
    Rng rng(o.seed);
    Problem pr = problem(o, rng);
    VerifyOptions vo;
    if (o.trials > 0) vo.symbol_trials = o.trials;
    SuiteResult s = run_verify(pr, vo, rng);
    json rep = report_header("verify", o.seed);
    rep["config"] = config_json(pr);
    rep.update(checks_to_json(s));
    emit(o, rep);
    print_checks(s);
    int passed = 0;
    for (const auto& c : s.checks) passed += c.pass;
    std::printf("%d/%zu checks passed\n", passed, s.checks.size());
    return s.all_pass() ? 0 : 1;
}

int cmd_curvature(const Common& o)
{
    Rng rng(o.seed);
    Problem pr = problem(o, rng);
    const GenConnection& c = pr.conn;
    FormField F = curvature_FA(c, pr.psi);
    const double lam = o.has_lambda ? o.lambda : lambda_from_chern(c, pr.psi);
    Residual res = eh_residual(c, pr.psi, lam);

    // components outside U^{-n} + U^{-n+2}, pointwise structure of psi
    double stray = 0.0;
    const int n = pr.n;
    GCStructure J = gcs_from_spinor(pr.psi.form_at(0));
    for (std::size_t p = 0; p < F.points(); ++p) {
        if (!pr.psi_constant) J = gcs_from_spinor(pr.psi.form_at(p));
        for (int k = -n; k <= n; ++k) {
            if (k == -n || k == -n + 2) continue;
            MatC P = u_projector(J, k);
            for (int e = 0; e < c.r * c.r; ++e) {
                VecC v(F.D);
                for (int S = 0; S < F.D; ++S) v(S) = F.v[F.offset(p, S) + e];
                stray = std::max(stray, (P * v).cwiseAbs().maxCoeff());
            }
        }
    }
    SuiteResult s;
    s.checks.push_back(upper_check("curvature_type", "curvature-in-u-minus-n-and-u-minus-n-plus-2", stray, 1e-10));
    MatField K = mean_curvature_K(c, pr.psi);
    s.checks.push_back(upper_check("mean_curvature_hermitian", "mean-curvature", K.herm_defect(), 1e-12));
    const cd ch = chern_pair(c, pr.psi);

    json rep = report_header("curvature", o.seed);
    rep["config"] = config_json(pr);
    rep.update(checks_to_json(s));
    rep["lambda"] = lam;
    rep["chern_pair"] = {ch.real(), ch.imag()};
    rep["eh_residual"] = res.norm;
    rep["mean_curvature"] = dump_field(K);
    emit(o, rep);
    print_checks(s);
    std::printf("lambda %.12e\neh residual %.6e\n", lam, res.norm);
    return s.all_pass() ? 0 : 1;
}

int cmd_solve(const Common& o)
{
    Rng rng(o.seed);
    Problem pr = problem(o, rng);
    if (pr.rank != 1)
        throw Error(ErrorKind::Unsupported, "rank " + std::to_string(pr.rank) +
                                                " refused: solving the non-abelian equation is a non-goal; "
                                                "only r = 1 is solved");
    SolveOptions so;
    so.tol = o.tol;
    so.max_iter = o.max_iter;
    so.has_lambda = o.has_lambda;
    so.lambda = o.lambda;
    SolveResult res = solve_eh_line(pr.conn, pr.psi, so);
    const FlowTrace& t = res.trace;
    const double final_res = eh_residual(res.conn, pr.psi, t.lambda).norm;

    json rep = report_header("solve", o.seed);
    rep["config"] = config_json(pr);
    rep["trace"] = {{"iterations", t.iterations},
                    {"residual_history", t.residual_history},
                    {"step_size", t.step_size},
                    {"converged", t.converged},
                    {"lambda", t.lambda},
                    {"step_halvings", t.step_halvings},
                    {"stop_reason", t.stop_reason}};
    rep["tolerance"] = so.tol;
    rep["final_residual"] = final_res;
    rep["pass"] = t.converged;
    rep["connection"] = dump_connection(res.conn);
    emit(o, rep);
    if (!o.history_csv.empty()) {
        std::ofstream csv(o.history_csv);
        if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.history_csv);
        csv << "iteration,residual\n";
        csv.precision(17);
        for (std::size_t i = 0; i < t.residual_history.size(); ++i) csv << i << "," << t.residual_history[i] << "\n";
    }
    std::printf("lambda %.12e\nfinal residual %.6e after %d iterations (%s)\n", t.lambda, final_res, t.iterations,
                t.stop_reason.c_str());
    return t.converged ? 0 : 1;
}

VecR parse_theta(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "--theta expects comma-separated numbers");
        }
    }
    return Eigen::Map<VecR>(v.data(), static_cast<int>(v.size()));
}

int cmd_symbols(const Common& o)
{
    Rng rng(o.seed);
    Problem pr = problem(o, rng); // symbols use psi at the first grid point
    std::optional<VecR> theta = pr.theta;
    if (!o.theta.empty()) theta = parse_theta(o.theta);
    const int trials = o.trials > 0 ? o.trials : 100;
    const int n = pr.n, r = pr.rank;
    GCStructure J2 = gcs_from_spinor(symplectic_spinor(n, pr.b0, pr.omega0));
    GCStructure J1 = bfield_conjugate(gcs_complex(compatible_complex_structure(pr.omega0)), pr.b0);
    auto reps = theta ? symbol_exactness(n, r, J1, J2, *theta, trials, rng) : symbol_exactness(n, r, J1, J2, trials, rng);
    const std::string tag = "_n" + std::to_string(n) + "_r" + std::to_string(r);
    SuiteResult s = symbol_summary(reps, r, tag);
    s.checks.push_back(upper_check("herm_projection_commutes" + tag, "symbol-herm-projection",
                                   herm_projection_commutator(r, J2, rng), 1e-12));
    json rep = report_header("symbols", o.seed);
    rep["config"] = {{"n", n}, {"rank", r}, {"trials", reps.size()}};
    rep.update(checks_to_json(s));
    json list = json::array();
    for (const auto& x : reps) list.push_back(symbol_report_json(x));
    rep["reports"] = list;
    emit(o, rep);
    print_checks(s);
    return s.all_pass() ? 0 : 1;
}

int cmd_report(const Common& o)
{
    if (o.input.empty()) throw Error(ErrorKind::InvalidArgument, "report needs --input REPORT.json");
    json rep = read_json_file(o.input);
    if (!rep.is_object() || !rep.contains("schema_version") || !rep.contains("command"))
        throw Error(ErrorKind::Parse, o.input + " is not a genkf report");
    if (rep["schema_version"] != kReportSchema)
        throw Error(ErrorKind::Parse, "unsupported schema_version " + rep["schema_version"].dump());
    std::printf("%s report, seed %s\n", rep["command"].get<std::string>().c_str(), rep.value("seed", json()).dump().c_str());
    bool ok = true;
    if (rep.contains("checks")) {
        for (const auto& c : rep["checks"]) {
            std::printf("%s  %-52s %.3e %s %.1e  [%s]\n", c.at("pass").get<bool>() ? "PASS" : "FAIL",
                        c.at("name").get<std::string>().c_str(), c.at("value").get<double>(),
                        c.at("compare").get<std::string>().c_str(), c.at("tolerance").get<double>(),
                        c.at("anchor").get<std::string>().c_str());
            ok = ok && c.at("pass").get<bool>();
        }
    }
    if (rep.contains("trace")) {
        const auto& t = rep["trace"];
        std::printf("solve: %d iterations, lambda %.6e, final residual %.3e, %s\n", t.at("iterations").get<int>(),
                    t.at("lambda").get<double>(), rep.at("final_residual").get<double>(),
                    t.at("stop_reason").get<std::string>().c_str());
        ok = ok && t.at("converged").get<bool>();
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"genkf: generalized connections on flat tori"};
    app.require_subcommand(1);
    Common o;
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    auto* curvature = app.add_subcommand("curvature", "curvature and mean curvature of the input connection");
    auto* solve = app.add_subcommand("solve", "solve the Einstein-Hermitian equation (rank 1)");
    auto* symbols = app.add_subcommand("symbols", "exactness of the symbol sequence at random covectors");
    auto* report = app.add_subcommand("report", "summarize a report written by another command");
    for (auto* s : {verify, curvature, solve, symbols, report}) add_common(s, o);
    for (auto* s : {curvature, solve}) {
        auto* opt = s->add_option("--lambda", o.lambda, "Einstein constant (default: from the Chern pairing)");
        s->callback([&o, opt] { o.has_lambda = opt->count() > 0; });
    }
    solve->add_option("--history-csv", o.history_csv, "write the residual history as CSV");
    symbols->add_option("--theta", o.theta, "covector tested first, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(o);
        if (*curvature) return cmd_curvature(o);
        if (*solve) return cmd_solve(o);
        if (*symbols) return cmd_symbols(o);
        return cmd_report(o);
    } catch (const Error& e) {
        std::fprintf(stderr, "genkf: %s\n", e.what());
        return e.kind() == ErrorKind::NotConverged ? 1 : 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "genkf: malformed input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "genkf: %s\n", e.what());
        return 2;
    }
}
