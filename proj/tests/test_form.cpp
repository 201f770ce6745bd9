#include "doctest.h"
#include "helpers.hpp"

using namespace genkf;
using namespace testutil;

TEST_SUITE("form")
{
    TEST_CASE("wedge signs of monomials")
    {
        auto a = GradedForm::dx(2, 0), b = GradedForm::dx(2, 1);
        CHECK(wedge(a, b).c[0b11] == cd(1.0));
        CHECK(wedge(b, a).c[0b11] == cd(-1.0));
        CHECK(wedge(a, a).max_abs() == 0.0);
        // dx2 ^ (dx0 ^ dx1) = dx0 ^ dx1 ^ dx2
        CHECK(wedge(GradedForm::dx(2, 2), wedge(a, b)).c[0b111] == cd(1.0));
        CHECK(wedge_sign(0b10, 0b01) == -1);
    }

    TEST_CASE("interior products by hand")
    {
        GradedForm w = GradedForm::monomial(1, 0b11);
        CHECK(interior_axis(0, w).c[0b10] == cd(1.0));
        CHECK(interior_axis(1, w).c[0b01] == cd(-1.0));
        CHECK(interior_axis(0, GradedForm::dx(1, 1)).max_abs() == 0.0);
    }

    TEST_CASE("mukai pairing on n = 1 monomials")
    {
        // <a, b> = top part of a ^ sigma(b), sigma = -1 on degree 2
        auto one = GradedForm::one(1), top = GradedForm::monomial(1, 0b11);
        CHECK(mukai_pair(one, top) == cd(-1.0));
        CHECK(mukai_pair(top, one) == cd(1.0));
        CHECK(mukai_pair(GradedForm::dx(1, 0), GradedForm::dx(1, 1)) == cd(1.0));
        CHECK(mukai_pair(GradedForm::dx(1, 1), GradedForm::dx(1, 0)) == cd(-1.0));
    }

    TEST_CASE("neutral pairing")
    {
        CHECK(neutral_pair(GenVector::tangent(2, 1), GenVector::cotangent(2, 1)) == cd(0.5));
        CHECK(neutral_pair(GenVector::tangent(2, 1), GenVector::cotangent(2, 0)) == cd(0.0));
        MatR Q = neutral_matrix(2);
        CHECK(max_diff(Q, Q.transpose()) == 0.0);
        CHECK(Q(0, 4) == 0.5);
    }

    TEST_CASE("clifford relation, mukai symmetry and adjunction on random data")
    {
        Rng rng(101);
        for (int n = 1; n <= 3; ++n) {
            const int sgn = n % 2 ? -1 : 1;
            for (int t = 0; t < 200; ++t) {
                GenVector e = rng.complex_genvector(n), f = rng.complex_genvector(n);
                GradedForm a = rng.form(n), b = rng.form(n);
                GradedForm lhs = clifford_act(e, clifford_act(f, a)) + clifford_act(f, clifford_act(e, a));
                CHECK((lhs - (2.0 * neutral_pair(e, f)) * a).max_abs() < 1e-12);
                CHECK(std::abs(mukai_pair(a, b) - double(sgn) * mukai_pair(b, a)) < 1e-12);
                CHECK(std::abs(mukai_pair(clifford_act(e, a), b) + mukai_pair(a, clifford_act(e, b))) < 1e-12);
            }
        }
    }

    TEST_CASE("clifford matrix matches the action")
    {
        Rng rng(7);
        for (int n = 1; n <= 3; ++n) {
            GenVector e = rng.complex_genvector(n);
            GradedForm a = rng.form(n);
            VecC va = Eigen::Map<const VecC>(a.c.data(), a.size());
            GradedForm ea = clifford_act(e, a);
            VecC want = Eigen::Map<const VecC>(ea.c.data(), ea.size());
            CHECK((clifford_matrix(e) * va - want).cwiseAbs().maxCoeff() < 1e-13);
        }
    }

    TEST_CASE("exponential of a two-form")
    {
        MatR W = darboux(2);
        GradedForm e = exp_two_form(two_form(2, W));
        // 1 + dx01 + dx23 + dx0123
        CHECK(e.c[0] == cd(1.0));
        CHECK(e.c[0b0011] == cd(1.0));
        CHECK(e.c[0b1100] == cd(1.0));
        CHECK(e.c[0b1111] == cd(1.0));
        CHECK(e.c[0b0101] == cd(0.0));
        // e^{i omega}: top coefficient (i)^2 = -1
        CHECK(std::abs(symplectic_spinor(2, MatR::Zero(4, 4), W).c[0b1111] - cd(-1.0)) < 1e-15);
    }

    TEST_CASE("two-form matrix round trip")
    {
        Rng rng(3);
        MatR B = rng.antisym(6);
        CHECK(max_diff(two_form_matrix(two_form(3, B)), MatC(B.cast<cd>())) < 1e-15);
    }

    TEST_CASE("b-transform preserves the pairing")
    {
        Rng rng(9);
        for (int n = 1; n <= 3; ++n)
            for (int t = 0; t < 50; ++t) {
                GradedForm b = two_form(n, MatR(0.5 * rng.antisym(2 * n)));
                GradedForm x = rng.form(n), y = rng.form(n);
                CHECK(std::abs(mukai_pair(b_transform(b, x), b_transform(b, y)) - mukai_pair(x, y)) < 1e-12);
            }
    }

    TEST_CASE("b-transform rejects complex or non-degree-2 input")
    {
        GradedForm x = GradedForm::one(1);
        CHECK_THROWS_AS(b_transform(GradedForm::dx(1, 0), x), Error);
        CHECK_THROWS_AS(b_transform(GradedForm::monomial(1, 0b11, I_), x), Error);
    }
}
