#include "genkf/sample.hpp"

#include <cmath>
#include <numbers>

namespace genkf {

std::vector<double> smooth_function(const TorusGrid& g, Rng& rng, int kmax, double amp)
{
    const int m = g.dim();
    std::vector<double> f(g.points(), 0.0);
    const int modes = 3;
    for (int t = 0; t < modes; ++t) {
        std::vector<int> k(m);
        for (int mu = 0; mu < m; ++mu) k[mu] = rng.integer(-kmax, kmax);
        const double a = amp * rng.normal() / modes, b = amp * rng.normal() / modes;
        for (std::size_t p = 0; p < g.points(); ++p) {
            double ph = 0.0;
            for (int mu = 0; mu < m; ++mu) ph += 2.0 * std::numbers::pi * k[mu] * g.x(p, mu) / g.period(mu);
            f[p] += a * std::cos(ph) + b * std::sin(ph);
        }
    }
    return f;
}

MatField smooth_hermitian_field(GridPtr g, int r, Rng& rng, int kmax, double amp)
{
    MatField out(g, r);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            auto re = smooth_function(*g, rng, kmax, amp);
            std::vector<double> im(g->points(), 0.0);
            if (i != j) im = smooth_function(*g, rng, kmax, amp);
            for (std::size_t p = 0; p < g->points(); ++p) {
                out.at(p)(i, j) = cd(re[p], im[p]);
                out.at(p)(j, i) = cd(re[p], -im[p]);
            }
        }
    return out;
}

MatField smooth_skew_field(GridPtr g, int r, Rng& rng, int kmax, double amp)
{
    return I_ * smooth_hermitian_field(std::move(g), r, rng, kmax, amp);
}

GenConnection random_connection(GridPtr g, int r, Rng& rng, double amp_A, double amp_V, int kmax)
{
    GenConnection c(g, r);
    for (int mu = 0; mu < g->dim(); ++mu) {
        if (amp_A != 0.0) c.A[mu] = smooth_skew_field(g, r, rng, kmax, amp_A);
        if (amp_V != 0.0) c.V[mu] = smooth_skew_field(g, r, rng, kmax, amp_V);
    }
    return c;
}

MatField smooth_gauge(GridPtr g, int r, Rng& rng, double amp)
{
    MatField X = smooth_skew_field(g, r, rng, 1, amp);
    MatField out(g, r);
    for (std::size_t p = 0; p < g->points(); ++p) {
        // X is skew-Hermitian: exp via the Hermitian eigenbasis of -iX
        Eigen::SelfAdjointEigenSolver<MatC> es(-I_ * MatC(X.at(p)));
        VecC ph = (I_ * es.eigenvalues().cast<cd>()).array().exp();
        out.at(p) = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
    return out;
}

FormField constant_psi(GridPtr g, const MatR& b, const MatR& omega)
{
    return FormField::constant(g, symplectic_spinor(g->n(), b, omega));
}

FormField constant_two_form(GridPtr g, const MatR& W)
{
    return FormField::constant(g, two_form(g->n(), W));
}

MatR darboux(int n)
{
    MatR W = MatR::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        W(2 * i, 2 * i + 1) = 1.0;
        W(2 * i + 1, 2 * i) = -1.0;
    }
    return W;
}

} // namespace genkf
