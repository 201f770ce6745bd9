#include "doctest.h"
#include "helpers.hpp"

#include "genkf/calibration.hpp"
#include "genkf/moment.hpp"

using namespace genkf;
using namespace testutil;

TEST_SUITE("moment")
{
    TEST_CASE("metric and structure recovered from spinor pairings")
    {
        Rng rng(3);
        for (int n = 1; n <= 3; ++n) {
            GradedForm psi = symplectic_spinor(n, 0.5 * rng.antisym(2 * n), symplectic(n, rng));
            CHECK(pairing_identity_defect(psi, calib::kCliffordSign) < 1e-10);
            CHECK(structure_identity_defect(psi, calib::kCliffordSign) < 1e-10);
        }
    }

    struct Setup {
        GridPtr g;
        FormField psi;
        GenConnection c;
        GenSection a, a2;
        MatField xi;
    };

    Setup make(int n, int r, std::uint64_t seed)
    {
        Rng rng(seed);
        Setup s;
        s.g = TorusGrid::make(n, n == 1 ? 32 : 8);
        s.psi = constant_psi(s.g, 0.4 * rng.antisym(2 * n), symplectic(n, rng));
        s.c = random_connection(s.g, r, rng, 0.6, 0.6);
        s.a = random_connection(s.g, r, rng, 0.8, 0.8);
        s.a2 = random_connection(s.g, r, rng, 0.8, 0.8);
        s.xi = smooth_skew_field(s.g, r, rng);
        return s;
    }

    TEST_CASE("integration by parts for the generalized derivative")
    {
        for (int n = 1; n <= 2; ++n) {
            Setup s = make(n, 2, 10 + n);
            GenSection Dxi = covariant_derivative(s.c, s.xi);
            const cd lhs = pairwise_sum(trace_pair(section_act(Dxi, s.psi), section_act(s.a, s.psi.conj())));
            const cd rhs = pairwise_sum(trace_pair(tensor(s.xi, s.psi), generalized_d(s.c, s.a, s.psi.conj())));
            CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }

    TEST_CASE("symplectic form on connections")
    {
        Setup s = make(1, 2, 20);
        const double w12 = omega_GM(s.a, s.a2, s.psi), w21 = omega_GM(s.a2, s.a, s.psi);
        CHECK(std::abs(w12 + w21) < 1e-10 * std::max(1.0, std::abs(w12)));
        CHECK(w12 == doctest::Approx(calib::kCliffordSign * omega_spinor(s.a, s.a2, s.psi)).epsilon(1e-10));
        // compatible metric on connections is positive
        GCStructure J1 = bfield_conjugate(gcs_complex(compatible_complex_structure(darboux(1))), MatR::Zero(2, 2));
        FormField psi0 = constant_psi(s.g, MatR::Zero(2, 2), darboux(1));
        CHECK(g_GM(s.a, s.a, J1, psi0) > 0.0);
    }

    TEST_CASE("moment map derivative and identification with K")
    {
        for (int n = 1; n <= 2; ++n) {
            Setup s = make(n, 2, 30 + n);
            const double h = 1e-4;
            const double dmu =
                (moment_value(s.c + h * s.a, s.xi, s.psi) - moment_value(s.c + (-h) * s.a, s.xi, s.psi)) / (2 * h);
            const double want = calib::kMomentSign * omega_GM(covariant_derivative(s.c, s.xi), s.a, s.psi);
            CHECK(std::abs(dmu - want) < 1e-6 * std::max(1.0, std::abs(want)));
            const double mu = moment_value(s.c, s.xi, s.psi);
            CHECK(std::abs(mu - moment_from_K(s.c, s.xi, s.psi)) < 1e-10 * std::max(1.0, std::abs(mu)));
        }
    }

    TEST_CASE("moment map is gauge equivariant under constant unitaries")
    {
        Rng rng(5);
        Setup s = make(1, 2, 40);
        MatC U = rng.unitary(2);
        MatField Ug = MatField::constant(s.g, U);
        GenConnection cg = gauge_transform(s.c, Ug);
        MatField xig(s.g, 2);
        for (std::size_t p = 0; p < s.g->points(); ++p) xig.at(p) = U * s.xi.at(p) * U.adjoint();
        CHECK(moment_value(cg, xig, s.psi) ==
              doctest::Approx(moment_value(s.c, s.xi, s.psi)).epsilon(1e-10));
    }
}
