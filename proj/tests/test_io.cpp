#include "doctest.h"
#include "helpers.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>

#include "genkf/spec_io.hpp"
#include "genkf/suite.hpp"

using namespace genkf;
using namespace testutil;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

Problem load(const std::string& text, Overrides ov = {})
{
    Rng rng(5);
    return load_problem(json::parse(text), ov, rng);
}

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("expression values")
    {
        auto g = TorusGrid::make(1, {8, 16}, {2.0, 1.0});
        const double tp = 2 * std::numbers::pi;
        Expr e = Expr::parse("0.5 - 2*sin(3*x1)*cos(x2) + cos(2*x2)");
        for (std::size_t p = 0; p < g->points(); ++p) {
            const double x = g->x(p, 0), y = g->x(p, 1);
            const double want = 0.5 - 2 * std::sin(tp * 3 * x / 2.0) * std::cos(tp * y) + std::cos(tp * 2 * y);
            CHECK(std::abs(e.eval(*g, p) - want) < 1e-14);
        }
        CHECK_FALSE(e.is_constant());
        CHECK(e.constant_value() == 0.5);
        CHECK(e.max_axis() == 1);
        CHECK(Expr::parse("-1.5e-1").is_constant());
        CHECK(Expr::parse("-1.5e-1").constant_value() == doctest::Approx(-0.15));
        CHECK(Expr::parse("sin(x1)").sample(*g).size() == g->points());
        CHECK(kind_of([&] { Expr::parse("sin(x3)").sample(*g); }) == ErrorKind::InvalidArgument);
    }

    TEST_CASE("expression parse errors")
    {
        for (const char* s : {"", "sin(x0)", "tan(x1)", "sin(x1", "2*", "sin(0.5*x1)", "x1", "1 + + 2", "cos()"})
            CHECK_MESSAGE(kind_of([&] { Expr::parse(s); }) == ErrorKind::Parse, s);
    }

    TEST_CASE("defaults")
    {
        Problem p1 = load(R"J({"n": 1})J");
        CHECK(p1.g->size(0) == 32);
        CHECK(p1.rank == 1);
        CHECK(max_diff(p1.omega0, darboux(1)) == 0.0);
        CHECK(p1.b0.isZero());
        CHECK(p1.psi_constant);
        CHECK(p1.conn.A[0].max_abs() == 0.0);
        Problem p2 = load(R"J({"n": 2})J");
        CHECK(p2.g->points() == 4096u);
        CHECK_FALSE(p2.theta.has_value());
    }

    TEST_CASE("overrides and explicit components")
    {
        Problem p = load(R"J({"n": 1, "grid": {"sizes": [16, 8], "periods": 2.0},
                              "connection": {"A": [[0, "0.3*sin(x2)"], [0, 0.1]], "V": "zero",
                                             "flux": [[0, 0.5], [-0.5, 0]]}})J");
        CHECK(p.g->size(0) == 16);
        CHECK(p.g->size(1) == 8);
        CHECK(p.g->period(1) == 2.0);
        for (std::size_t q = 0; q < p.g->points(); ++q) {
            CHECK(std::abs(p.conn.A[0].v[q] - I_ * 0.3 * std::sin(std::numbers::pi * p.g->x(q, 1))) < 1e-14);
            CHECK(p.conn.A[1].v[q] == I_ * 0.1);
        }
        CHECK(p.conn.flux(0, 1) == 0.5);
        Overrides ov;
        ov.grid = 12;
        ov.rank = 2;
        Problem q = load(R"J({"n": 1, "connection": {"A": {"random": {"amplitude": 0.2}}}})J", ov);
        CHECK(q.g->size(1) == 12);
        CHECK(q.rank == 2);
        CHECK(q.conn.A[0].skew_defect() < 1e-14);
        CHECK(q.conn.A[0].max_abs() > 0.0);
    }

    TEST_CASE("symbol direction")
    {
        Problem p = load(R"J({"n": 2, "symbols": {"theta": [1, 0, 2, 0.5]}})J");
        REQUIRE(p.theta.has_value());
        CHECK((*p.theta)(2) == 2.0);
    }

    TEST_CASE("non-closed spinor")
    {
        CHECK(kind_of([] { load(R"J({"n": 2, "grid": {"sizes": 8},
             "psi": {"b": [[0, "0.3*sin(x3)", 0, 0], ["-0.3*sin(x3)", 0, 0, 0], [0,0,0,0], [0,0,0,0]]}})J"); }) ==
              ErrorKind::NotClosed);
        // closed but non-constant b is accepted
        Problem p = load(R"J({"n": 1, "psi": {"b": [[0, "0.2*cos(x1)"], ["-0.2*cos(x1)", 0]]}})J");
        CHECK_FALSE(p.psi_constant);
        CHECK(p.psi_check.d_norm <= p.psi_check.tolerance);
    }

    TEST_CASE("rejections")
    {
        CHECK(kind_of([] { load(R"J({"n": 3})J"); }) != ErrorKind::NotClosed);
        CHECK(kind_of([] { load(R"J({"n": 1, "bundle": {"rank": 9}})J"); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([] { load(R"J({"n": 1, "psi": {"b": [[0, 1], [1, 0]]}})J"); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([] { load(R"J({"n": 1, "psi": {"omega": [[0, 0], [0, 0]]}})J"); }) == ErrorKind::Degenerate);
        CHECK(kind_of([] { load(R"J({"n": 1, "connection": {"A": [0.3, [0, 1]]}})J"); }) ==
              ErrorKind::InvalidArgument); // real entry is not skew-Hermitian
        CHECK(kind_of([] { load(R"J({"n": 1, "connection": {"A": [[0, 1]]}})J"); }) == ErrorKind::Parse);
        CHECK(kind_of([] { load(R"J({"n": 1, "connection": {"flux": [[0, "sin(x1)"], ["-sin(x1)", 0]]}})J"); }) !=
              ErrorKind::NotClosed);
        CHECK(kind_of([] { load(R"J({"n": "one"})J"); }) == ErrorKind::Parse);
    }

    TEST_CASE("malformed files")
    {
        const std::string path = "genkf_io_malformed.json";
        {
            std::ofstream f(path);
            f << "{\"n\": 1,";
        }
        CHECK(kind_of([&] { read_json_file(path); }) == ErrorKind::Parse);
        std::remove(path.c_str());
        CHECK(kind_of([] { read_json_file("/nonexistent/genkf.json"); }) == ErrorKind::InvalidArgument);
    }

    TEST_CASE("dump shapes")
    {
        auto g = TorusGrid::make(1, 8);
        Rng rng(6);
        GenConnection c1 = random_connection(g, 1, rng), c2 = random_connection(g, 2, rng);
        json d1 = dump_connection(c1), d2 = dump_connection(c2);
        CHECK(d1["rank"] == 1);
        CHECK(d1["A"].size() == 2u);
        CHECK(d1["A"][0].size() == 64u);
        CHECK(d1["A"][0][3].size() == 2u);
        CHECK(d1["A"][0][3][1].get<double>() == c1.A[0].v[3].imag());
        CHECK(d2["V"][1][5].size() == 2u);
        CHECK(d2["V"][1][5][0].size() == 2u);
        CHECK(d2["flux"].size() == 2u);
        json h = report_header("verify", 7);
        CHECK(h["schema_version"] == kReportSchema);
        CHECK(h["seed"] == 7);
    }

    TEST_CASE("verify report is independent of the thread count")
    {
        Problem pr = load(R"J({"n": 1, "grid": {"sizes": 16}, "bundle": {"rank": 2},
                              "psi": {"b": [[0, 0.2], [-0.2, 0]]}})J");
        VerifyOptions opts;
        opts.algebra_trials = 10;
        opts.symbol_trials = 3;
        std::string dumps[2];
        const int caps[2] = {1, 4};
        for (int i = 0; i < 2; ++i) {
            set_thread_cap(caps[i]);
            Rng rng(11);
            dumps[i] = checks_to_json(run_verify(pr, opts, rng)).dump();
        }
        set_thread_cap(0);
        CHECK(dumps[0] == dumps[1]);
    }
}
