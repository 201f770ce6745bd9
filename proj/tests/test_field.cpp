#include "doctest.h"
#include "helpers.hpp"

#include <numbers>

using namespace genkf;
using namespace testutil;

TEST_SUITE("field")
{
    TEST_CASE("grid indexing and neighbours")
    {
        auto g = TorusGrid::make(2, std::vector<int>{8, 10, 12, 8}, std::vector<double>{1, 2, 1, 3});
        CHECK(g->points() == 8u * 10u * 12u * 8u);
        for (std::size_t p : {std::size_t(0), std::size_t(17), g->points() - 1}) {
            CHECK(g->index(g->coords(p)) == p);
            auto c = g->coords(p);
            auto q = c;
            q[2] = (c[2] + 1) % 12;
            CHECK(g->plus(2, p) == g->index(q));
            CHECK(g->minus(2, g->plus(2, p)) == p);
        }
        CHECK(g->spacing(1) == doctest::Approx(0.2));
        CHECK_THROWS_AS(TorusGrid::make(1, 7), Error);
        CHECK_THROWS_AS(TorusGrid::make(3, 8), Error);
    }

    TEST_CASE("central difference of a Fourier mode")
    {
        auto g = TorusGrid::make(1, std::vector<int>{16, 24}, std::vector<double>{1.0, 2.0});
        const int k = 3;
        std::vector<cd> f(g->points());
        for (std::size_t p = 0; p < f.size(); ++p) f[p] = std::sin(2 * std::numbers::pi * k * g->x(p, 1) / 2.0);
        auto df = diff(f, *g, 1);
        const double s = spectral_factor(k, g->spacing(1), 2.0);
        double err = 0;
        for (std::size_t p = 0; p < f.size(); ++p)
            err = std::max(err, std::abs(df[p] - s * std::cos(2 * std::numbers::pi * k * g->x(p, 1) / 2.0)));
        CHECK(err < 1e-12);
    }

    TEST_CASE("d squared vanishes and exact top forms integrate to zero")
    {
        Rng rng(4);
        for (int n = 1; n <= 2; ++n) {
            auto g = TorusGrid::make(n, n == 1 ? 16 : 8);
            FormField X(g, 2);
            for (unsigned S = 0; S < unsigned(X.D); ++S)
                for (int e = 0; e < 4; ++e) {
                    auto f = smooth_function(*g, rng);
                    for (std::size_t p = 0; p < g->points(); ++p) X.v[X.offset(p, S) + e] = f[p];
                }
            CHECK(d_field(d_field(X)).max_abs() < 1e-10);
            FormField Y(g, 1);
            for (unsigned S = 0; S < unsigned(Y.D); ++S) {
                auto f = smooth_function(*g, rng);
                for (std::size_t p = 0; p < g->points(); ++p) Y.v[Y.offset(p, S)] = f[p];
            }
            FormField dY = d_field(Y);
            std::vector<cd> top(g->points());
            for (std::size_t p = 0; p < g->points(); ++p) top[p] = dY.at(p, unsigned(Y.D - 1))(0, 0);
            CHECK(std::abs(integrate(top, *g)) < 1e-12);
        }
    }

    TEST_CASE("integration of constants")
    {
        auto g = TorusGrid::make(1, std::vector<int>{8, 12}, std::vector<double>{2.0, 3.0});
        CHECK(integrate(std::vector<double>(g->points(), 1.5), *g) == doctest::Approx(9.0));
    }

    TEST_CASE("lie derivative of a function is v . df")
    {
        Rng rng(12);
        auto g = TorusGrid::make(1, 16);
        auto f = smooth_function(*g, rng);
        std::vector<std::vector<double>> v{smooth_function(*g, rng), smooth_function(*g, rng)};
        FormField F(g, 1);
        for (std::size_t p = 0; p < g->points(); ++p) F.v[F.offset(p, 0)] = f[p];
        FormField L = lie_derivative(v, F);
        std::vector<cd> fc(f.begin(), f.end());
        auto fx = diff(fc, *g, 0), fy = diff(fc, *g, 1);
        double err = 0;
        for (std::size_t p = 0; p < g->points(); ++p)
            err = std::max(err, std::abs(L.at(p, 0)(0, 0) - (v[0][p] * fx[p] + v[1][p] * fy[p])));
        CHECK(err < 1e-12);
    }

    TEST_CASE("covariant derivative with commuting potential reduces to d")
    {
        Rng rng(2);
        auto g = TorusGrid::make(1, 16);
        std::vector<MatField> A{MatField::constant(g, I_ * MatC::Identity(2, 2)),
                                MatField::constant(g, 2.0 * I_ * MatC::Identity(2, 2))};
        FormField X(g, 2);
        for (auto& x : X.v) x = rng.cnormal();
        CHECK((covariant_d(A, X) - d_field(X)).max_abs() < 1e-14);
    }

    TEST_CASE("reductions do not depend on the worker count")
    {
        Rng rng(6);
        std::vector<double> x(100000);
        for (auto& v : x) v = rng.normal();
        set_thread_cap(1);
        const double a = pairwise_sum(x);
        auto g = TorusGrid::make(2, 8);
        FormField X(g, 1);
        for (auto& v : X.v) v = rng.cnormal();
        FormField d1 = d_field(X);
        set_thread_cap(4);
        CHECK(pairwise_sum(x) == a);
        CHECK(d_field(X).v == d1.v);
        set_thread_cap(0);
    }
}
