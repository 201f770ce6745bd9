#include "doctest.h"
#include "helpers.hpp"

#include "genkf/structures.hpp"

using namespace genkf;
using namespace testutil;

namespace {

int binom(int m, int k)
{
    int c = 1;
    for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
    return c;
}

} // namespace

TEST_SUITE("structures")
{
    TEST_CASE("spinor structures square to -1 and preserve the pairing")
    {
        Rng rng(21);
        for (int n = 1; n <= 3; ++n) {
            GradedForm psi = symplectic_spinor(n, 0.5 * rng.antisym(2 * n), symplectic(n, rng));
            GCStructure J = gcs_from_spinor(psi);
            const int m = 4 * n;
            MatR Q = neutral_matrix(n);
            CHECK(max_diff(J.mat * J.mat, -MatR::Identity(m, m)) < 1e-10);
            CHECK(max_diff(J.mat.transpose() * Q * J.mat, Q) < 1e-10);
            PureSpinorCheck pc = classify_spinor(psi);
            CHECK(pc.kernel_dim == 2 * n);
            CHECK(pc.nondegenerate);
            CHECK(pc.type_number == 0);
        }
    }

    TEST_CASE("symplectic structure matrix")
    {
        Rng rng(5);
        MatR W = symplectic(2, rng);
        MatR want = MatR::Zero(8, 8);
        want.topRightCorner(4, 4) = -W.inverse();
        want.bottomLeftCorner(4, 4) = W;
        CHECK(max_diff(gcs_symplectic(W).mat, want) < 1e-14);
        CHECK(max_diff(gcs_from_spinor(symplectic_spinor(2, MatR::Zero(4, 4), W)).mat, want) < 1e-10);
    }

    TEST_CASE("complex structure from dx + i dy")
    {
        GradedForm phi(1);
        phi.c[0b01] = 1.0;
        phi.c[0b10] = I_;
        MatR J(2, 2);
        J << 0, -1, 1, 0; // J d/dx = d/dy
        CHECK(max_diff(gcs_from_spinor(phi).mat, gcs_complex(J).mat) < 1e-10);
        PureSpinorCheck pc = classify_spinor(phi);
        CHECK(pc.type_number == 1);
    }

    TEST_CASE("non-pure form is rejected")
    {
        GradedForm a = GradedForm::one(2);
        a.c[0b1111] = 1.0;
        a.c[0b0011] = 0.3;
        CHECK(classify_spinor(a).kernel_dim < 4);
        CHECK_THROWS_AS(gcs_from_spinor(a), Error);
    }

    TEST_CASE("annihilator is isotropic")
    {
        Rng rng(8);
        GradedForm psi = symplectic_spinor(2, rng.antisym(4), symplectic(2, rng));
        MatC K = spinor_kernel_matrix(psi);
        MatC Q = neutral_matrix(2).cast<cd>();
        CHECK((K.transpose() * Q * K).cwiseAbs().maxCoeff() < 1e-10);
    }

    TEST_CASE("U^k decomposition: multiplicities, resolution, spinor line")
    {
        Rng rng(13);
        for (int n = 1; n <= 3; ++n) {
            GradedForm psi = symplectic_spinor(n, 0.3 * rng.antisym(2 * n), symplectic(n, rng));
            GCStructure J = gcs_from_spinor(psi);
            const int D = 1 << (2 * n);
            MatC sum = MatC::Zero(D, D);
            for (int k = -n; k <= n; ++k) {
                CHECK(u_multiplicity(J, k) == binom(2 * n, n + k));
                sum += u_projector(J, k);
            }
            CHECK(max_diff(sum, MatC::Identity(D, D)) < 1e-10);
            VecC v = Eigen::Map<const VecC>(psi.c.data(), psi.size());
            CHECK((spin_operator(J) * v + cd(0.0, n) * v).cwiseAbs().maxCoeff() < 1e-10 * v.cwiseAbs().maxCoeff());
            CHECK((u_project(J, -n, psi) - psi).max_abs() < 1e-10);
        }
    }

    TEST_CASE("b-field conjugation matches the spinor transform")
    {
        Rng rng(17);
        for (int n = 1; n <= 2; ++n) {
            MatR W = symplectic(n, rng), B = rng.antisym(2 * n);
            GradedForm psi = symplectic_spinor(n, MatR::Zero(2 * n, 2 * n), W);
            GCStructure lhs = gcs_from_spinor(b_transform(two_form(n, B), psi));
            CHECK(max_diff(lhs.mat, bfield_conjugate(gcs_from_spinor(psi), B).mat) < 1e-10);
        }
    }

    TEST_CASE("generalized Kahler pair from a symplectic form")
    {
        Rng rng(23);
        for (int n = 1; n <= 3; ++n) {
            MatR W = symplectic(n, rng);
            MatR J = compatible_complex_structure(W);
            const int m = 2 * n;
            CHECK(max_diff(J * J, -MatR::Identity(m, m)) < 1e-12);
            MatR g = J.transpose() * W;
            CHECK(max_diff(g, g.transpose()) < 1e-12);
            CHECK(Eigen::SelfAdjointEigenSolver<MatR>(g).eigenvalues().minCoeff() > 0.0);
            GKPair pair = gk_validate(gcs_complex(J), gcs_symplectic(W));
            CHECK(pair.min_eig > 0.0);
            CHECK(max_diff(pair.Ghat * pair.Ghat, MatR::Identity(2 * m, 2 * m)) < 1e-10);
            CHECK(pair.L1L2.cols() == n);
            CHECK(pair.L1barL2bar.cols() == n);
        }
    }

    TEST_CASE("indefinite and non-commuting pairs are rejected")
    {
        MatR W = darboux(1);
        GCStructure J1 = gcs_complex(compatible_complex_structure(W));
        CHECK_THROWS_AS(gk_validate(J1, J1), Error);
        MatR R(2, 2);
        R << 1, 2, 0, 1;
        MatR J2 = R * compatible_complex_structure(W) * R.inverse();
        CHECK_THROWS_AS(gk_validate(J1, gcs_complex(J2)), Error);
    }

    TEST_CASE("spinor recovered from its structure")
    {
        Rng rng(31);
        MatR W = symplectic(2, rng);
        GradedForm psi = symplectic_spinor(2, MatR::Zero(4, 4), W);
        GradedForm s = spinor_from_gcs(gcs_symplectic(W));
        VecC a = Eigen::Map<const VecC>(psi.c.data(), psi.size()), v = Eigen::Map<const VecC>(s.c.data(), s.size());
        const cd c = a.dot(v) / a.squaredNorm();
        CHECK((v - c * a).cwiseAbs().maxCoeff() < 1e-10);
    }
}
